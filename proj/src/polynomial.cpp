#include "dilatron/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dilatron {

MultiPoly::MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {
    if (num_vars == 0) throw DilationError(ErrorCode::InvalidInput, "polynomial needs ≥ 1 variable");
}

MultiPoly MultiPoly::constant(std::size_t num_vars, Complex c) {
    MultiPoly p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
}

MultiPoly MultiPoly::monomial(const Exponents& exps, Complex c) {
    MultiPoly p(exps.size());
    p.add_term(exps, c);
    return p;
}

MultiPoly& MultiPoly::add_term(const Exponents& exps, Complex c) {
    if (exps.size() != num_vars_) {
        throw DilationError(ErrorCode::ShapeMismatch, "exponent length differs from num_vars");
    }
    for (int e : exps) {
        if (e < 0) throw DilationError(ErrorCode::InvalidInput, "exponents must be nonnegative");
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw DilationError(ErrorCode::InvalidInput, "coefficient is not finite");
    }
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        if (c != Complex(0.0)) terms_.emplace(exps, c);
        return *this;
    }
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
    return *this;
}

int MultiPoly::total_degree() const {
    int deg = 0;
    for (const auto& [exps, c] : terms_) {
        int s = 0;
        for (int e : exps) s += e;
        deg = std::max(deg, s);
    }
    return deg;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    if (other.num_vars_ != num_vars_) {
        throw DilationError(ErrorCode::ShapeMismatch, "adding polynomials in different variables");
    }
    MultiPoly out = *this;
    for (const auto& [exps, c] : other.terms_) out.add_term(exps, c);
    return out;
}

MultiPoly MultiPoly::operator*(Complex s) const {
    MultiPoly out(num_vars_);
    for (const auto& [exps, c] : terms_) out.add_term(exps, c * s);
    return out;
}

Complex eval_scalar(const MultiPoly& p, std::span<const Complex> z) {
    if (z.size() != p.num_vars()) {
        throw DilationError(ErrorCode::ShapeMismatch, "point dimension differs from num_vars");
    }
    Complex sum = 0.0;
    for (const auto& [exps, c] : p.terms()) {
        // Same association as eval_matrix so 1×1 evaluations agree bitwise.
        Complex term = c;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            Complex pw = 1.0;
            for (int e = 0; e < exps[i]; ++e) pw = z[i] * pw;
            term = term * pw;
        }
        sum += term;
    }
    return sum;
}

CMatrix eval_matrix(const MultiPoly& p, const std::vector<CMatrix>& ops, const Tolerances& tol) {
    if (ops.size() != p.num_vars()) {
        throw DilationError(ErrorCode::ShapeMismatch, "tuple length differs from num_vars");
    }
    const long n = ops.front().rows();
    for (const CMatrix& t : ops) {
        if (t.rows() != n || t.cols() != n) {
            throw DilationError(ErrorCode::ShapeMismatch, "tuple operators differ in size");
        }
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            const double r = commutator_norm(ops[i], ops[j]);
            if (r > tol.dc) {
                std::ostringstream os;
                os << "‖T_" << i << "T_" << j << " − T_" << j << "T_" << i << "‖ = " << r;
                throw DilationError(ErrorCode::NotCommuting, os.str());
            }
        }
    }

    // powers[i][e] = T_i^e, extended on demand.
    std::vector<std::vector<CMatrix>> powers(ops.size(), std::vector<CMatrix>{identity(n)});
    auto power = [&](std::size_t i, int e) -> const CMatrix& {
        auto& pw = powers[i];
        while (static_cast<int>(pw.size()) <= e) pw.push_back(ops[i] * pw.back());
        return pw[static_cast<std::size_t>(e)];
    };

    CMatrix out = CMatrix::Zero(n, n);
    for (const auto& [exps, c] : p.terms()) {
        CMatrix term = c * identity(n);
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] > 0) term = term * power(i, exps[i]);
        }
        out += term;
    }
    return out;
}

CMatrix eval_matrix(const MultiPoly& p, const ContractionTuple& tuple, const Tolerances& tol) {
    return eval_matrix(p, tuple.ops(), tol);
}

int default_grid(const MultiPoly& p) { return std::max(64, 16 * p.total_degree()); }

namespace {

struct GridWalker {
    std::vector<Complex> coefs;
    std::vector<std::vector<int>> exps;      // per term
    std::vector<std::vector<Complex>> roots; // roots[e][j] = ω^{j·e}
    int grid = 1;
    std::size_t vars = 1;
    double best = 0.0;

    Complex root_power(int e, int j) const {
        return roots[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)];
    }

    void walk(std::size_t dim, std::vector<Complex>& partial) {
        const std::size_t nterms = coefs.size();
        if (dim + 1 == vars) {
            for (int j = 0; j < grid; ++j) {
                Complex s = 0.0;
                for (std::size_t t = 0; t < nterms; ++t) s += partial[t] * root_power(exps[t][dim], j);
                best = std::max(best, std::abs(s));
            }
            return;
        }
        std::vector<Complex> next(nterms);
        for (int j = 0; j < grid; ++j) {
            for (std::size_t t = 0; t < nterms; ++t) next[t] = partial[t] * root_power(exps[t][dim], j);
            walk(dim + 1, next);
        }
    }
};

}  // namespace

double sup_norm_torus(const MultiPoly& p, int grid_per_dim) {
    if (grid_per_dim < 1) throw DilationError(ErrorCode::InvalidInput, "grid_per_dim must be ≥ 1");
    if (p.terms().empty()) return 0.0;

    GridWalker w;
    w.grid = grid_per_dim;
    w.vars = p.num_vars();
    for (const auto& [exps, c] : p.terms()) {
        w.coefs.push_back(c);
        w.exps.push_back(exps);
    }
    const int deg = p.total_degree();
    w.roots.assign(static_cast<std::size_t>(deg) + 1, std::vector<Complex>(grid_per_dim));
    for (int e = 0; e <= deg; ++e) {
        for (int j = 0; j < grid_per_dim; ++j) {
            // Reduce e·j mod M first so every grid angle is computed exactly once.
            const long r = (static_cast<long>(e) * j) % grid_per_dim;
            w.roots[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)] =
                std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / grid_per_dim);
        }
    }
    std::vector<Complex> partial = w.coefs;
    w.walk(0, partial);
    return w.best;
}

MultiPoly holbrook_polynomial() {
    MultiPoly p(3);
    p.add_term({2, 0, 0}, 1.0);
    p.add_term({0, 2, 0}, 1.0);
    p.add_term({0, 0, 2}, 1.0);
    p.add_term({1, 1, 0}, -2.0);
    p.add_term({1, 0, 1}, -2.0);
    p.add_term({0, 1, 1}, -2.0);
    return p;
}

}  // namespace dilatron
