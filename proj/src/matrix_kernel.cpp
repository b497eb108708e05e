#include "dilatron/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace dilatron {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NotContraction: return "NotContraction";
        case ErrorCode::NotInvariant: return "NotInvariant";
        case ErrorCode::NotCommuting: return "NotCommuting";
        case ErrorCode::NotDoublyCommuting: return "NotDoublyCommuting";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::FugledeResidual: return "FugledeResidual";
        case ErrorCode::DegenerateFailure: return "DegenerateFailure";
        case ErrorCode::NotInDisc: return "NotInDisc";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::DegreeExceedsOrder: return "DegreeExceedsOrder";
        case ErrorCode::NotCP: return "NotCP";
        case ErrorCode::NotADilation: return "NotADilation";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

Tolerances Tolerances::scaled(double factor) const {
    Tolerances t = *this;
    t.eig *= factor;
    t.herm *= factor;
    t.psd *= factor;
    t.rank *= factor;
    t.dil *= factor;
    t.dc *= factor;
    t.jd *= factor;
    return t;
}

Tolerances Tolerances::from_env() {
    const char* raw = std::getenv("DILATRON_TOLERANCE_SCALE");
    if (raw == nullptr || *raw == '\0') return {};
    char* end = nullptr;
    const double factor = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !std::isfinite(factor) || factor <= 0.0) {
        throw DilationError(ErrorCode::InvalidInput,
                            std::string("DILATRON_TOLERANCE_SCALE must be a positive number, got '") +
                                raw + "'");
    }
    return Tolerances{}.scaled(factor);
}

void require_finite(const CMatrix& a, const std::string& what) {
    if (a.rows() <= 0 || a.cols() <= 0) {
        throw DilationError(ErrorCode::InvalidInput, what + " has an empty dimension");
    }
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            const Complex z = a(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                std::ostringstream os;
                os << what << "[" << i << "][" << j << "] is not finite";
                throw DilationError(ErrorCode::InvalidInput, os.str());
            }
        }
    }
}

CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

CMatrix identity(long n) { return CMatrix::Identity(n, n); }

HermEig herm_eig(const CMatrix& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) {
        throw DilationError(ErrorCode::ShapeMismatch, "herm_eig needs a square matrix");
    }
    require_finite(a);
    if (operator_norm(a - a.adjoint()) > tol.herm * operator_norm(a)) {
        throw DilationError(ErrorCode::NotHermitian, "symmetry residual exceeds tolerance");
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Svd svd(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double operator_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> solver(a);
    return solver.singularValues()(0);
}

long numerical_rank(const CMatrix& a, double tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> solver(a);
    const RVector& s = solver.singularValues();
    const double threshold = tol * std::max(1.0, s(0));
    long r = 0;
    for (long i = 0; i < s.size(); ++i) {
        if (s(i) > threshold) ++r;
    }
    return r;
}

CMatrix psd_sqrt(const CMatrix& a, const Tolerances& tol) {
    const HermEig eig = herm_eig(a, tol);
    if (eig.eigenvalues.size() > 0 && eig.eigenvalues(0) < -tol.psd) {
        std::ostringstream os;
        os << "minimum eigenvalue " << eig.eigenvalues(0) << " below -" << tol.psd;
        throw DilationError(ErrorCode::NotPSD, os.str());
    }
    const RVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    const CMatrix& q = eig.eigenvectors;
    return q * roots.cast<Complex>().asDiagonal() * q.adjoint();
}

double unitarity_residual(const CMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return operator_norm(a.adjoint() * a - identity(a.rows()));
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
    return operator_norm(a * b - b * a);
}

CMatrix block_assemble(const BlockGrid& blocks, const std::vector<long>& row_dims,
                       const std::vector<long>& col_dims) {
    if (blocks.size() != row_dims.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "block grid row count differs from row_dims");
    }
    long rows = 0;
    long cols = 0;
    for (long d : row_dims) rows += d;
    for (long d : col_dims) cols += d;
    CMatrix out = CMatrix::Zero(rows, cols);

    long r0 = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        if (blocks[bi].size() != col_dims.size()) {
            throw DilationError(ErrorCode::ShapeMismatch,
                                "block grid row " + std::to_string(bi) + " has wrong length");
        }
        long c0 = 0;
        for (std::size_t bj = 0; bj < col_dims.size(); ++bj) {
            if (const auto& blk = blocks[bi][bj]) {
                if (blk->rows() != row_dims[bi] || blk->cols() != col_dims[bj]) {
                    std::ostringstream os;
                    os << "block (" << bi << "," << bj << ") is " << blk->rows() << "x"
                       << blk->cols() << ", slot is " << row_dims[bi] << "x" << col_dims[bj];
                    throw DilationError(ErrorCode::ShapeMismatch, os.str());
                }
                out.block(r0, c0, row_dims[bi], col_dims[bj]) = *blk;
            }
            c0 += col_dims[bj];
        }
        r0 += row_dims[bi];
    }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace dilatron
