#pragma once

#include <vector>

#include "dilatron/matrix_kernel.hpp"

namespace dilatron {

/// Ordered list of same-size contractions with cached commutation
/// diagnostics. The residuals are recomputed whenever a tuple is built.
class ContractionTuple {
public:
    /// Throws ShapeMismatch for empty or ragged input and NotContraction when
    /// some ‖T_i‖ exceeds 1 + tol.psd.
    explicit ContractionTuple(std::vector<CMatrix> ops, const Tolerances& tol = {});

    /// Single-operator tuple.
    static ContractionTuple single(const CMatrix& t, const Tolerances& tol = {});

    const std::vector<CMatrix>& ops() const { return ops_; }
    const CMatrix& op(std::size_t i) const { return ops_.at(i); }
    std::size_t size() const { return ops_.size(); }
    long dim() const { return ops_.front().rows(); }

    /// max_{i<j} ‖T_iT_j − T_jT_i‖
    double commute_residual() const { return commute_residual_; }
    /// max_{i≠j} ‖T_iT_j* − T_j*T_i‖
    double double_commute_residual() const { return double_commute_residual_; }

private:
    std::vector<CMatrix> ops_;
    double commute_residual_ = 0.0;
    double double_commute_residual_ = 0.0;
};

/// Integer multi-index; entries may be negative for regular-dilation checks.
using MultiIndex = std::vector<int>;

/// Nonnegative multi-indices of length k and total degree ≤ max_degree, in
/// graded lexicographic order (degree first, then lexicographically descending
/// in the leading coordinate, e.g. (1,0) before (0,1)).
std::vector<MultiIndex> graded_indices(std::size_t k, int max_degree);

/// All m ∈ ℤ^k with |m_1| + … + |m_k| ≤ max_degree, graded by |m| and then
/// lexicographically descending.
std::vector<MultiIndex> signed_indices(std::size_t k, int max_degree);

}  // namespace dilatron
