#include "dilatron/dilation_single.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dilatron {

const char* to_string(Construction c) {
    switch (c) {
        case Construction::halmos: return "halmos";
        case Construction::egervary: return "egervary";
        case Construction::doubly_commuting: return "doubly_commuting";
        case Construction::commutant_pair: return "commutant_pair";
        case Construction::external: return "external";
    }
    return "external";
}

Construction construction_from_string(const std::string& s) {
    for (Construction c : {Construction::halmos, Construction::egervary,
                           Construction::doubly_commuting, Construction::commutant_pair,
                           Construction::external}) {
        if (s == to_string(c)) return c;
    }
    throw DilationError(ErrorCode::InvalidInput, "unknown construction '" + s + "'");
}

namespace {

void require_contraction(const CMatrix& t, const Tolerances& tol) {
    if (t.rows() != t.cols()) {
        throw DilationError(ErrorCode::ShapeMismatch, "contraction must be square");
    }
    require_finite(t, "contraction");
    const double norm = operator_norm(t);
    if (norm > 1.0 + tol.psd) {
        std::ostringstream os;
        os << "operator norm " << norm << " exceeds 1 + " << tol.psd;
        throw DilationError(ErrorCode::NotContraction, os.str());
    }
}

}  // namespace

DefectData defect(const CMatrix& t, const Tolerances& tol) {
    require_contraction(t, tol);
    const long n = t.rows();
    const Svd s = svd(t);

    // Singular values are descending, so the defect directions form the tail.
    long first = n;
    while (first > 0 && s.singular_values(first - 1) < 1.0 - tol.rank) --first;
    const long d = n - first;

    RVector delta = RVector::Zero(n);
    for (long i = first; i < n; ++i) {
        const double sig = s.singular_values(i);
        delta(i) = std::sqrt(std::max(0.0, 1.0 - sig * sig));
    }
    const auto delta_diag = delta.cast<Complex>().asDiagonal();

    DefectData out;
    out.d_op = s.v * delta_diag * s.v.adjoint();
    out.d_star_op = s.u * delta_diag * s.u.adjoint();
    out.d_rank = d;
    out.iso_basis = s.v.rightCols(d);
    out.iso_basis_star = s.u.rightCols(d);
    out.defect_sigma = s.singular_values.tail(d);
    return out;
}

NDilation halmos_dilation(const CMatrix& t, const Tolerances& tol) {
    const DefectData def = defect(t, tol);
    const long n = t.rows();
    const CMatrix u = block_assemble({{t, def.d_star_op}, {def.d_op, CMatrix(-t.adjoint())}},
                                     {n, n}, {n, n});
    return {{u}, n, 1, Construction::halmos};
}

NDilation egervary_dilation(const CMatrix& t, int n_order, const Tolerances& tol) {
    if (n_order < 1) {
        throw DilationError(ErrorCode::InvalidInput, "dilation order must be positive");
    }
    const DefectData def = defect(t, tol);
    const long n = t.rows();
    const long d = def.d_rank;
    if (d == 0) return {{t}, n, n_order, Construction::egervary};

    const CMatrix& b = def.iso_basis;
    const CMatrix& b_star = def.iso_basis_star;
    const CMatrix v = b_star * b.adjoint();  // Im D_T → Im D_{T*}

    const auto blocks_n = static_cast<std::size_t>(n_order) + 1;
    BlockGrid grid(blocks_n, std::vector<std::optional<CMatrix>>(blocks_n));
    std::vector<long> dims(blocks_n, d);
    dims[0] = n;

    grid[0][0] = t;
    grid[0][n_order] = CMatrix(def.d_star_op * b_star);
    grid[1][0] = CMatrix(b_star.adjoint() * v * def.d_op);
    grid[1][n_order] = CMatrix(-(b_star.adjoint() * v * t.adjoint() * b_star));
    for (std::size_t r = 2; r < blocks_n; ++r) grid[r][r - 1] = identity(d);

    return {{block_assemble(grid, dims, dims)}, n, n_order, Construction::egervary};
}

CMatrix compressed_power(const NDilation& dil, const MultiIndex& exponents) {
    if (exponents.size() != dil.unitaries.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "multi-index length differs from tuple size");
    }
    CMatrix x = CMatrix::Identity(dil.dim(), dil.h_dim);
    for (std::size_t i = exponents.size(); i-- > 0;) {
        for (int e = 0; e < exponents[i]; ++e) x = dil.unitaries[i] * x;
    }
    return x.topRows(dil.h_dim);
}

CMatrix tuple_power(const ContractionTuple& tuple, const MultiIndex& exponents) {
    if (exponents.size() != tuple.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "multi-index length differs from tuple size");
    }
    CMatrix x = identity(tuple.dim());
    for (std::size_t i = exponents.size(); i-- > 0;) {
        for (int e = 0; e < exponents[i]; ++e) x = tuple.op(i) * x;
    }
    return x;
}

namespace {

void check_shapes(const NDilation& dil, const ContractionTuple& tuple) {
    if (dil.unitaries.size() != tuple.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "dilation and tuple have different lengths");
    }
    if (dil.h_dim != tuple.dim() || dil.h_dim > dil.dim()) {
        throw DilationError(ErrorCode::ShapeMismatch, "h_dim does not match the tuple dimension");
    }
    for (const CMatrix& u : dil.unitaries) {
        if (u.rows() != dil.dim() || u.cols() != dil.dim()) {
            throw DilationError(ErrorCode::ShapeMismatch, "dilation unitaries differ in size");
        }
    }
}

}  // namespace

VerificationReport verify_dilation(const NDilation& dil, const ContractionTuple& tuple,
                                   int n_order, const Tolerances& tol) {
    check_shapes(dil, tuple);
    VerificationReport rep;
    rep.tolerance = tol.dil;
    for (const MultiIndex& alpha : graded_indices(tuple.size(), n_order)) {
        const double r = operator_norm(tuple_power(tuple, alpha) - compressed_power(dil, alpha));
        rep.residuals.push_back({alpha, r});
        rep.max_residual = std::max(rep.max_residual, r);
        if (!rep.first_failure && !(r <= tol.dil)) rep.first_failure = alpha;
    }
    for (std::size_t i = 0; i < dil.unitaries.size(); ++i) {
        rep.unitarity_residual = std::max(rep.unitarity_residual, unitarity_residual(dil.unitaries[i]));
        for (std::size_t j = i + 1; j < dil.unitaries.size(); ++j) {
            rep.commutation_residual = std::max(
                rep.commutation_residual, commutator_norm(dil.unitaries[i], dil.unitaries[j]));
        }
    }
    rep.pass = !rep.first_failure && rep.unitarity_residual <= tol.dil &&
               rep.commutation_residual <= tol.dil;
    return rep;
}

MinimalityResult check_n_minimality(const NDilation& dil, int n_order, const Tolerances& tol) {
    if (dil.unitaries.size() != 1) {
        throw DilationError(ErrorCode::ShapeMismatch, "N-minimality is defined for one unitary");
    }
    const CMatrix& u = dil.unitaries.front();
    const long m = dil.dim();
    const long n = dil.h_dim;
    CMatrix krylov(m, n * (n_order + 1));
    CMatrix x = CMatrix::Identity(m, n);
    for (int k = 0; k <= n_order; ++k) {
        krylov.middleCols(k * n, n) = x;
        x = u * x;
    }
    const long dim = numerical_rank(krylov, tol.rank);
    return {dim == m, dim};
}

double invariant_vector_check(const CMatrix& t, const CVector& h, const Tolerances& tol) {
    if (t.rows() != t.cols() || h.size() != t.rows()) {
        throw DilationError(ErrorCode::ShapeMismatch, "vector length differs from matrix size");
    }
    const double hn = h.norm();
    if (hn == 0.0) throw DilationError(ErrorCode::InvalidInput, "invariant vector must be nonzero");
    if ((t * h - h).norm() > tol.dil * hn) {
        throw DilationError(ErrorCode::NotInvariant, "Th differs from h");
    }
    return (t.adjoint() * h - h).norm() / hn;
}

ErgodicReport ergodic_demo(int n_order, const Tolerances& tol) {
    if (n_order < 1) throw DilationError(ErrorCode::InvalidInput, "order must be positive");
    ErgodicReport rep;
    rep.order = n_order;
    rep.dilation_order = 2 * n_order + 1;

    const NDilation dil = egervary_dilation(CMatrix::Zero(1, 1), rep.dilation_order, tol);
    const CMatrix& u_mat = dil.unitaries.front();
    rep.dilation_dim = dil.dim();

    const double scale = 1.0 / (n_order + 1);
    const Complex u = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(rep.dilation_dim));

    Complex sum = 0.0;
    Complex uk = 1.0;
    for (int k = 0; k <= n_order; ++k) {
        sum += uk;
        uk *= u;
    }
    rep.scalar_sum = scale * sum;
    rep.residual_modulus = std::abs(rep.scalar_sum);
    rep.closed_form_modulus = std::abs(2.0 * scale / (1.0 - u));
    rep.limit_target = 2.0 / std::numbers::pi;

    // Compression of the Cesàro mean, accumulated through matrix-vector products.
    CVector x = CVector::Unit(rep.dilation_dim, 0);
    Complex mean_corner = 0.0;
    for (int k = 0; k <= n_order; ++k) {
        mean_corner += x(0);
        if (k >= 1) rep.compression_residual = std::max(rep.compression_residual, std::abs(x(0)));
        x = u_mat * x;
    }
    rep.compressed_mean = std::abs(scale * mean_corner);
    rep.cesaro_mean_of_t = scale;  // T^0 = 1 and T^k = 0 for k ≥ 1

    CVector v(rep.dilation_dim);
    for (long j = 0; j < rep.dilation_dim; ++j) {
        v(j) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) /
                                   static_cast<double>(rep.dilation_dim));
    }
    rep.eigen_residual = (u_mat * v - u * v).norm() / v.norm();
    return rep;
}

}  // namespace dilatron
