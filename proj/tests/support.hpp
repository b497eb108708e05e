#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/matrix_kernel.hpp"
#include "dilatron/polynomial.hpp"
#include "dilatron/random.hpp"

namespace dilatron::testing {

inline Complex random_disc_point(SplitMix64& rng, double radius) {
    return std::polar(radius * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
}

/// Doubly commuting k-tuple on ℂ^n. ℂ^n is cut into blocks; on each block one
/// operator (or none) is a random contraction and the rest act as scalars.
/// The whole tuple is then conjugated by a Haar unitary.
inline std::vector<CMatrix> random_doubly_commuting(std::size_t k, long n, SplitMix64& rng) {
    std::vector<long> sizes;
    for (long left = n; left > 0;) {
        const long s = rng.uniform_int(1, left);
        sizes.push_back(s);
        left -= s;
    }
    std::vector<CMatrix> ops(k, CMatrix::Zero(n, n));
    long offset = 0;
    for (long s : sizes) {
        const long owner = rng.uniform_int(0, static_cast<long>(k));  // k means no owner
        for (std::size_t i = 0; i < k; ++i) {
            if (static_cast<long>(i) == owner) {
                ops[i].block(offset, offset, s, s) = random_contraction(s, rng, 0.2);
            } else {
                ops[i].block(offset, offset, s, s) =
                    random_disc_point(rng, 1.0) * CMatrix::Identity(s, s);
            }
        }
        offset += s;
    }
    const CMatrix q = random_unitary(n, rng);
    for (CMatrix& t : ops) t = q * t * q.adjoint();
    return ops;
}

/// Random polynomial in k variables with total degree ≤ max_degree.
inline MultiPoly random_poly(std::size_t k, int max_degree, SplitMix64& rng) {
    MultiPoly p(k);
    const long terms = rng.uniform_int(1, 6);
    for (long t = 0; t < terms; ++t) {
        std::vector<int> e(k, 0);
        int budget = static_cast<int>(rng.uniform_int(0, max_degree));
        for (std::size_t i = 0; i < k && budget > 0; ++i) {
            const int take = (i + 1 == k) ? budget : static_cast<int>(rng.uniform_int(0, budget));
            e[i] = take;
            budget -= take;
        }
        p.add_term(e, rng.complex_normal());
    }
    if (p.terms().empty()) p.add_term(std::vector<int>(k, 0), 1.0);
    return p;
}

/// z^α for a point z.
inline Complex monomial(const std::vector<Complex>& z, const MultiIndex& alpha) {
    Complex v = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        for (int e = 0; e < alpha[j]; ++e) v *= z[j];
    }
    return v;
}

/// Commuting contractions q_j(A)/max(1, ‖q_j(A)‖) for one random n×n contraction A.
inline std::vector<CMatrix> polynomial_tuple(std::size_t k, long n, int degree, SplitMix64& rng) {
    const CMatrix a = random_contraction(n, rng, 0.1);
    std::vector<CMatrix> ops;
    for (std::size_t j = 0; j < k; ++j) {
        const MultiPoly q = random_poly(1, degree, rng);
        CMatrix t = eval_matrix(q, std::vector<CMatrix>{a});
        t /= std::max(1.0, operator_norm(t));
        ops.push_back(std::move(t));
    }
    return ops;
}

}  // namespace dilatron::testing
