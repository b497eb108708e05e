#pragma once

#include <map>
#include <span>
#include <vector>

#include "dilatron/contraction_tuple.hpp"
#include "dilatron/matrix_kernel.hpp"

namespace dilatron {

/// Polynomial in k complex variables stored as exponent → coefficient.
/// Zero coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Complex>;

    explicit MultiPoly(std::size_t num_vars);

    static MultiPoly constant(std::size_t num_vars, Complex c);
    static MultiPoly monomial(const Exponents& exps, Complex c = 1.0);

    /// Adds c·z^exps; coefficients that cancel to exactly zero are erased.
    MultiPoly& add_term(const Exponents& exps, Complex c);

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    int total_degree() const;

    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator*(Complex s) const;

private:
    std::size_t num_vars_;
    TermMap terms_;
};

Complex eval_scalar(const MultiPoly& p, std::span<const Complex> z);

/// p(T_1, …, T_k) for a commuting tuple (within tol.dc).
CMatrix eval_matrix(const MultiPoly& p, const std::vector<CMatrix>& ops, const Tolerances& tol = {});
CMatrix eval_matrix(const MultiPoly& p, const ContractionTuple& tuple, const Tolerances& tol = {});

/// max(64, 16·deg p).
int default_grid(const MultiPoly& p);

/// max |p| over the grid {exp(2πi j/M)}^k. A lower bound on the torus sup
/// norm that converges as M grows.
double sup_norm_torus(const MultiPoly& p, int grid_per_dim);

/// x² + y² + z² − 2xy − 2xz − 2yz.
MultiPoly holbrook_polynomial();

}  // namespace dilatron
