#include "dilatron/contraction_tuple.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace dilatron {

ContractionTuple::ContractionTuple(std::vector<CMatrix> ops, const Tolerances& tol)
    : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw DilationError(ErrorCode::ShapeMismatch, "tuple must hold at least one operator");
    }
    const long n = ops_.front().rows();
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        const CMatrix& t = ops_[i];
        if (t.rows() != n || t.cols() != n) {
            std::ostringstream os;
            os << "ops[" << i << "] is " << t.rows() << "x" << t.cols() << ", expected " << n
               << "x" << n;
            throw DilationError(ErrorCode::ShapeMismatch, os.str());
        }
        require_finite(t, "ops[" + std::to_string(i) + "]");
        const double norm = operator_norm(t);
        if (norm > 1.0 + tol.psd) {
            std::ostringstream os;
            os << "ops[" << i << "] has norm " << norm;
            throw DilationError(ErrorCode::NotContraction, os.str());
        }
    }
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        for (std::size_t j = 0; j < ops_.size(); ++j) {
            if (i == j) continue;
            if (i < j) {
                commute_residual_ = std::max(commute_residual_, commutator_norm(ops_[i], ops_[j]));
            }
            const CMatrix tj_star = ops_[j].adjoint();
            double_commute_residual_ =
                std::max(double_commute_residual_, commutator_norm(ops_[i], tj_star));
        }
    }
}

ContractionTuple ContractionTuple::single(const CMatrix& t, const Tolerances& tol) {
    return ContractionTuple(std::vector<CMatrix>{t}, tol);
}

namespace {

// Appends, in lexicographically descending order, every index whose
// entries satisfy the per-coordinate predicate and sum (of |.|) to `total`.
void enumerate_exact(std::size_t k, int total, bool allow_negative, MultiIndex& cur,
                     std::vector<MultiIndex>& out) {
    const std::size_t pos = cur.size();
    if (pos + 1 == k) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        if (allow_negative && total != 0) {
            cur.push_back(-total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int a = total; a >= 0; --a) {
        cur.push_back(a);
        enumerate_exact(k, total - a, allow_negative, cur, out);
        cur.pop_back();
        if (allow_negative && a != 0) {
            cur.push_back(-a);
            enumerate_exact(k, total - a, allow_negative, cur, out);
            cur.pop_back();
        }
    }
}

std::vector<MultiIndex> graded(std::size_t k, int max_degree, bool allow_negative) {
    std::vector<MultiIndex> out;
    if (k == 0 || max_degree < 0) return out;
    MultiIndex cur;
    cur.reserve(k);
    for (int d = 0; d <= max_degree; ++d) {
        std::vector<MultiIndex> level;
        enumerate_exact(k, d, allow_negative, cur, level);
        std::sort(level.begin(), level.end(), std::greater<>());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace

std::vector<MultiIndex> graded_indices(std::size_t k, int max_degree) {
    return graded(k, max_degree, false);
}

std::vector<MultiIndex> signed_indices(std::size_t k, int max_degree) {
    return graded(k, max_degree, true);
}

}  // namespace dilatron
