#include "dilatron/cpmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dilatron {

namespace {

void require_square_family(const std::vector<CMatrix>& ms, long n, const char* what) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].rows() != n || ms[i].cols() != n) {
            std::ostringstream os;
            os << what << "[" << i << "] is " << ms[i].rows() << "x" << ms[i].cols()
               << ", expected " << n << "x" << n;
            throw DilationError(ErrorCode::ShapeMismatch, os.str());
        }
        require_finite(ms[i], std::string(what) + "[" + std::to_string(i) + "]");
    }
}

// Eigenvalues above the index threshold, largest first.
std::vector<long> significant(const HermEig& eig, double rank_tol) {
    const long m = eig.eigenvalues.size();
    const double top = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    std::vector<long> idx;
    for (long i = m; i-- > 0;) {
        if (eig.eigenvalues(i) > rank_tol * top) idx.push_back(i);
    }
    return idx;
}

}  // namespace

CVector vec(const CMatrix& a) {
    return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, long n) {
    return Eigen::Map<const CMatrix>(v.data(), n, n);
}

CMatrix choi_matrix(const std::vector<CMatrix>& kraus) {
    if (kraus.empty()) throw DilationError(ErrorCode::ShapeMismatch, "empty Kraus list");
    const long n = kraus.front().rows();
    require_square_family(kraus, n, "kraus");
    CMatrix choi = CMatrix::Zero(n * n, n * n);
    for (const CMatrix& a : kraus) {
        const CVector v = vec(a);
        choi += v * v.adjoint();
    }
    return choi;
}

CMatrix choi_matrix_from_images(const std::vector<CMatrix>& images) {
    const auto count = static_cast<long>(images.size());
    const auto n = static_cast<long>(std::lround(std::sqrt(static_cast<double>(count))));
    if (n <= 0 || n * n != count) {
        throw DilationError(ErrorCode::ShapeMismatch, "need n² matrix-unit images");
    }
    require_square_family(images, n, "unit_images");
    CMatrix choi(n * n, n * n);
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) {
            choi.block(a * n, b * n, n, n) = images[static_cast<std::size_t>(a * n + b)];
        }
    }
    return choi;
}

CPMap CPMap::from_kraus(std::vector<CMatrix> kraus) {
    CMatrix choi = choi_matrix(kraus);
    const long n = kraus.front().rows();
    return CPMap(n, std::move(kraus), std::move(choi));
}

CPMap CPMap::from_unit_images(const std::vector<CMatrix>& images) {
    CMatrix choi = choi_matrix_from_images(images);
    const long n = images.front().rows();
    return CPMap(n, std::nullopt, std::move(choi));
}

CMatrix CPMap::apply(const CMatrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_) {
        throw DilationError(ErrorCode::ShapeMismatch, "argument size differs from map dimension");
    }
    CMatrix out = CMatrix::Zero(dim_, dim_);
    if (kraus_) {
        for (const CMatrix& a : *kraus_) out += a * x * a.adjoint();
        return out;
    }
    for (long a = 0; a < dim_; ++a) {
        for (long b = 0; b < dim_; ++b) {
            if (x(a, b) != Complex(0.0)) out += x(a, b) * choi_.block(a * dim_, b * dim_, dim_, dim_);
        }
    }
    return out;
}

std::vector<CMatrix> CPMap::unit_images() const {
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(dim_ * dim_));
    for (long a = 0; a < dim_; ++a) {
        for (long b = 0; b < dim_; ++b) out.push_back(choi_.block(a * dim_, b * dim_, dim_, dim_));
    }
    return out;
}

CPTest is_cp(const CPMap& phi, const Tolerances& tol) {
    const HermEig eig = herm_eig(phi.choi(), tol);
    const double lam = eig.eigenvalues(0);
    return {lam >= -tol.psd, lam};
}

std::vector<CMatrix> kraus_decompose(const CPMap& phi, const Tolerances& tol) {
    const HermEig eig = herm_eig(phi.choi(), tol);
    if (eig.eigenvalues(0) < -tol.psd) {
        std::ostringstream os;
        os << "Choi matrix has eigenvalue " << eig.eigenvalues(0);
        throw DilationError(ErrorCode::NotCP, os.str());
    }
    std::vector<CMatrix> out;
    for (long i : significant(eig, tol.rank)) {
        out.push_back(std::sqrt(eig.eigenvalues(i)) * unvec(eig.eigenvectors.col(i), phi.dim()));
    }
    return out;
}

long index(const CPMap& phi, const Tolerances& tol) {
    const HermEig eig = herm_eig(phi.choi(), tol);
    if (eig.eigenvalues(0) < -tol.psd) {
        std::ostringstream os;
        os << "Choi matrix has eigenvalue " << eig.eigenvalues(0);
        throw DilationError(ErrorCode::NotCP, os.str());
    }
    return static_cast<long>(significant(eig, tol.rank).size());
}

double unit_norm(const CPMap& phi) { return operator_norm(phi.apply(identity(phi.dim()))); }

CPMap compose(const CPMap& phi, const CPMap& psi) {
    if (phi.dim() != psi.dim()) {
        throw DilationError(ErrorCode::ShapeMismatch, "composing maps of different dimension");
    }
    if (phi.kraus() && psi.kraus()) {
        std::vector<CMatrix> kraus;
        for (const CMatrix& a : *phi.kraus()) {
            for (const CMatrix& b : *psi.kraus()) kraus.push_back(a * b);
        }
        return CPMap::from_kraus(std::move(kraus));
    }
    std::vector<CMatrix> images;
    for (const CMatrix& e : psi.unit_images()) images.push_back(phi.apply(e));
    return CPMap::from_unit_images(images);
}

CPMap automorphism_compression_check(const CMatrix& u, long h_dim, const Tolerances& tol) {
    if (u.rows() != u.cols()) throw DilationError(ErrorCode::ShapeMismatch, "U must be square");
    require_finite(u, "U");
    if (h_dim < 1 || h_dim > u.rows()) {
        throw DilationError(ErrorCode::ShapeMismatch, "h_dim must lie in [1, dim U]");
    }
    const double r = unitarity_residual(u);
    if (r > tol.eig) {
        std::ostringstream os;
        os << "‖U*U − I‖ = " << r;
        throw DilationError(ErrorCode::NotUnitary, os.str());
    }
    return CPMap::from_kraus({u.topLeftCorner(h_dim, h_dim)});
}

}  // namespace dilatron
