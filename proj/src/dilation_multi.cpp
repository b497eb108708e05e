#include "dilatron/dilation_multi.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

namespace dilatron {

namespace {

// One unfolding step: operator j is dilated, the others are copied N+1 times.
std::vector<CMatrix> dilate_stage(const std::vector<CMatrix>& ops, std::size_t j, int n_order,
                                  const Tolerances& tol) {
    const long dim = ops.front().rows();
    const auto copies = static_cast<long>(n_order) + 1;
    const CMatrix eye_copies = identity(copies);

    std::vector<CMatrix> out;
    out.reserve(ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i != j) {
            out.push_back(kron(eye_copies, ops[i]));
            continue;
        }
        const CMatrix& v = ops[i];
        const DefectData def = defect(v, tol);
        const auto blocks_n = static_cast<std::size_t>(copies);
        BlockGrid grid(blocks_n, std::vector<std::optional<CMatrix>>(blocks_n));
        grid[0][0] = v;
        grid[0][n_order] = def.d_star_op;
        grid[1][0] = def.d_op;
        grid[1][n_order] = CMatrix(-v.adjoint());
        for (std::size_t r = 2; r < blocks_n; ++r) grid[r][r - 1] = identity(dim);
        const std::vector<long> dims(blocks_n, dim);
        out.push_back(block_assemble(grid, dims, dims));
    }
    return out;
}

void require_order(int n_order) {
    if (n_order < 1) throw DilationError(ErrorCode::InvalidInput, "dilation order must be positive");
}

}  // namespace

std::vector<std::vector<CMatrix>> doubly_commuting_stages(const ContractionTuple& tuple,
                                                          int n_order, const Tolerances& tol) {
    require_order(n_order);
    if (tuple.double_commute_residual() > tol.dc) {
        std::ostringstream os;
        os << "double commutation residual " << tuple.double_commute_residual() << " exceeds "
           << tol.dc;
        throw DilationError(ErrorCode::NotDoublyCommuting, os.str());
    }
    std::vector<std::vector<CMatrix>> stages;
    std::vector<CMatrix> current = tuple.ops();
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        current = dilate_stage(current, j, n_order, tol);
        stages.push_back(current);
    }
    return stages;
}

NDilation doubly_commuting_dilation(const ContractionTuple& tuple, int n_order,
                                    const Tolerances& tol) {
    auto stages = doubly_commuting_stages(tuple, n_order, tol);
    return {std::move(stages.back()), tuple.dim(), n_order, Construction::doubly_commuting};
}

CMatrix t_of_m(const std::vector<CMatrix>& ops, const MultiIndex& m) {
    if (ops.empty() || m.size() != ops.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "multi-index length differs from tuple size");
    }
    const long n = ops.front().rows();
    CMatrix pos = identity(n);
    CMatrix neg = identity(n);
    for (std::size_t i = m.size(); i-- > 0;) {
        const int plus = std::max(m[i], 0);
        const int minus = plus - m[i];
        for (int e = 0; e < plus; ++e) pos = ops[i] * pos;
        for (int e = 0; e < minus; ++e) neg = ops[i] * neg;
    }
    return neg.adjoint() * pos;
}

CMatrix t_of_m(const ContractionTuple& tuple, const MultiIndex& m) {
    return t_of_m(tuple.ops(), m);
}

CMatrix compressed_u_of_m(const NDilation& dil, const MultiIndex& m) {
    if (m.size() != dil.unitaries.size()) {
        throw DilationError(ErrorCode::ShapeMismatch, "multi-index length differs from tuple size");
    }
    MultiIndex plus(m.size());
    MultiIndex minus(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        plus[i] = std::max(m[i], 0);
        minus[i] = plus[i] - m[i];
    }
    // P_H U(m) P_H = (U_neg·E)*·(U_pos·E) with E the inclusion of H.
    auto apply = [&](const MultiIndex& e) {
        CMatrix x = CMatrix::Identity(dil.dim(), dil.h_dim);
        for (std::size_t i = e.size(); i-- > 0;) {
            for (int r = 0; r < e[i]; ++r) x = dil.unitaries[i] * x;
        }
        return x;
    };
    return apply(minus).adjoint() * apply(plus);
}

VerificationReport verify_regular(const NDilation& dil, const ContractionTuple& tuple,
                                  int n_order, const Tolerances& tol) {
    if (dil.unitaries.size() != tuple.size() || dil.h_dim != tuple.dim() ||
        dil.h_dim > dil.dim()) {
        throw DilationError(ErrorCode::ShapeMismatch, "dilation does not match the tuple");
    }
    VerificationReport rep;
    rep.tolerance = tol.dil;
    for (const MultiIndex& m : signed_indices(tuple.size(), n_order)) {
        const double r = operator_norm(t_of_m(tuple, m) - compressed_u_of_m(dil, m));
        rep.residuals.push_back({m, r});
        rep.max_residual = std::max(rep.max_residual, r);
        if (!rep.first_failure && !(r <= tol.dil)) rep.first_failure = m;
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

BrehmerReport brehmer_check(const ContractionTuple& tuple, const Tolerances& tol,
                            std::size_t max_size) {
    const std::size_t k = tuple.size();
    if (k > max_size) {
        throw DilationError(ErrorCode::InvalidInput,
                            "brehmer_check is limited to " + std::to_string(max_size) + " operators");
    }
    if (tuple.commute_residual() > tol.dc) {
        throw DilationError(ErrorCode::NotCommuting, "Brehmer positivity needs a commuting tuple");
    }
    const long n = tuple.dim();

    // T(e(v))*T(e(v)) for every subset v.
    const unsigned full = (1u << k) - 1u;
    std::vector<CMatrix> grams(full + 1u);
    for (unsigned v = 0; v <= full; ++v) {
        CMatrix prod = identity(n);
        for (std::size_t i = 0; i < k; ++i) {
            if (v & (1u << i)) prod = tuple.op(i) * prod;
        }
        grams[v] = prod.adjoint() * prod;
    }

    BrehmerReport rep;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (unsigned u = 1; u <= full; ++u) {
        CMatrix sum = CMatrix::Zero(n, n);
        // Submasks of u, including u itself and the empty set.
        for (unsigned v = u;; v = (v - 1) & u) {
            const double sign = (std::popcount(v) % 2 == 0) ? 1.0 : -1.0;
            sum += sign * grams[v];
            if (v == 0) break;
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (sum + sum.adjoint()),
                                                      Eigen::EigenvaluesOnly);
        const double lam = solver.eigenvalues()(0);
        rep.subsets.push_back({u, lam});
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, lam);
    }
    rep.pass = rep.min_eigenvalue >= -tol.psd;
    return rep;
}

NDilation dilate_commutant_pair(const CMatrix& u_mat, const CMatrix& v_mat, int n_order,
                                const Tolerances& tol) {
    require_order(n_order);
    if (u_mat.rows() != u_mat.cols() || v_mat.rows() != u_mat.rows() ||
        v_mat.cols() != u_mat.cols()) {
        throw DilationError(ErrorCode::ShapeMismatch, "U and V must be square of equal size");
    }
    require_finite(u_mat, "U");
    const double unit_res = unitarity_residual(u_mat);
    if (unit_res > tol.eig) {
        std::ostringstream os;
        os << "‖U*U − I‖ = " << unit_res;
        throw DilationError(ErrorCode::NotUnitary, os.str());
    }
    const ContractionTuple pair({u_mat, v_mat}, tol);
    if (pair.commute_residual() > tol.dc) {
        std::ostringstream os;
        os << "‖UV − VU‖ = " << pair.commute_residual();
        throw DilationError(ErrorCode::NotCommuting, os.str());
    }
    const double fuglede = commutator_norm(u_mat, v_mat.adjoint());
    if (fuglede > tol.dc) {
        std::ostringstream os;
        os << "‖UV* − V*U‖ = " << fuglede << " although U is unitary and commutes with V";
        throw DilationError(ErrorCode::FugledeResidual, os.str());
    }
    std::vector<CMatrix> ops = dilate_stage(pair.ops(), 1, n_order, tol);
    return {std::move(ops), u_mat.rows(), n_order, Construction::commutant_pair};
}

}  // namespace dilatron
