#pragma once

#include <vector>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/dilation_single.hpp"

namespace dilatron {

/// Unitary N-dilation of a doubly commuting tuple on dimension (N+1)^k·n.
///
/// Coordinates are dilated in ascending order. At stage j the current space
/// L is replaced by L^{⊕(N+1)}; the j-th operator V becomes
///
///     [ V      0  …  0   D_{V*} ]
///     [ D_V    0  …  0  −V*     ]
///     [ 0      I            0   ]
///     [           ⋱             ]
///     [ 0           I       0   ]
///
/// and every other operator becomes V_i ⊕ … ⊕ V_i. The result is also a
/// regular N-dilation: T(m) = P_H U(m) P_H for |m| ≤ N.
NDilation doubly_commuting_dilation(const ContractionTuple& tuple, int n_order,
                                    const Tolerances& tol = {});

/// Partial dilations after each stage (stage j has dimension (N+1)^j·n).
/// The last entry equals doubly_commuting_dilation(tuple, n_order).
std::vector<std::vector<CMatrix>> doubly_commuting_stages(const ContractionTuple& tuple,
                                                          int n_order,
                                                          const Tolerances& tol = {});

/// T(m) = (T_1^{m_1−}⋯T_k^{m_k−})*·T_1^{m_1+}⋯T_k^{m_k+}.
CMatrix t_of_m(const std::vector<CMatrix>& ops, const MultiIndex& m);
CMatrix t_of_m(const ContractionTuple& tuple, const MultiIndex& m);

/// P_H·U(m)·P_H, with U(m) formed by the same positive/negative split.
CMatrix compressed_u_of_m(const NDilation& dil, const MultiIndex& m);

/// Checks T(m) = P_H U(m) P_H for all m ∈ ℤ^k with |m| ≤ n_order.
VerificationReport verify_regular(const NDilation& dil, const ContractionTuple& tuple,
                                  int n_order, const Tolerances& tol = {});

struct BrehmerSubset {
    unsigned mask = 0;          // bit i set ⇔ i ∈ u
    double min_eigenvalue = 0.0;
};

struct BrehmerReport {
    std::vector<BrehmerSubset> subsets;  // bitmask order, u = 1 … 2^k − 1
    double min_eigenvalue = 0.0;
    bool pass = false;
};

/// Minimum eigenvalues of Σ_{v ⊆ u} (−1)^{|v|} T(e(v))*T(e(v)) for every
/// nonempty u. Throws NotCommuting when the tuple does not commute and
/// InvalidInput beyond `max_size` operators.
BrehmerReport brehmer_check(const ContractionTuple& tuple, const Tolerances& tol = {},
                            std::size_t max_size = 12);

/// Joint unitary N-dilation of (U, V) where U is unitary and V a commuting
/// contraction. Only V is dilated; U is carried as U ⊕ … ⊕ U, giving
/// dimension (N+1)·m.
NDilation dilate_commutant_pair(const CMatrix& u_mat, const CMatrix& v_mat, int n_order,
                                const Tolerances& tol = {});

}  // namespace dilatron
