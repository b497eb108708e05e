#include <doctest.h>

#include <array>

#include "dilatron/polynomial.hpp"
#include "support.hpp"

using namespace dilatron;

TEST_CASE("MultiPoly bookkeeping") {
    MultiPoly p(2);
    p.add_term({1, 0}, 2.0).add_term({0, 3}, 1.0).add_term({1, 0}, -2.0);
    CHECK(p.terms().size() == 1);
    CHECK(p.total_degree() == 3);
    CHECK_THROWS_AS(p.add_term({1}, 1.0), DilationError);
    CHECK_THROWS_AS(p.add_term({-1, 0}, 1.0), DilationError);
    CHECK_THROWS_AS(MultiPoly(0), DilationError);

    const MultiPoly q = (p + MultiPoly::monomial({0, 3}, -1.0));
    CHECK(q.terms().empty());
    CHECK(q.total_degree() == 0);
    CHECK((p * Complex(0.0)).terms().empty());
}

TEST_CASE("eval_scalar examples") {
    const std::array<Complex, 3> z{Complex(0.3, 0.1), Complex(-2, 1), 7.0};
    CHECK(eval_scalar(MultiPoly::constant(3, 1.0), z) == Complex(1.0));
    const std::array<Complex, 3> ones{1.0, 1.0, 1.0};
    CHECK(eval_scalar(holbrook_polynomial(), ones) == Complex(-3.0));
    const std::array<Complex, 2> ii{Complex(0, 1), Complex(0, 1)};
    CHECK(std::abs(eval_scalar(MultiPoly::monomial({1, 1}), ii) + 1.0) < 1e-15);
}

TEST_CASE("eval_matrix examples") {
    SplitMix64 rng(61);
    const auto ops = testing::polynomial_tuple(2, 3, 3, rng);
    CHECK((eval_matrix(MultiPoly::monomial({1, 0}), ops) - ops[0]).norm() == 0.0);

    CMatrix s(2, 2);
    s << 0, 1, 0, 0;
    CHECK(eval_matrix(MultiPoly::monomial({2}), std::vector<CMatrix>{s}).norm() == 0.0);

    // z1 z2 − z2 z1 + 1 collapses to the constant 1.
    const MultiPoly comm = MultiPoly::monomial({1, 1}) + MultiPoly::monomial({1, 1}, -1.0) +
                           MultiPoly::constant(2, 1.0);
    CHECK((eval_matrix(comm, ops) - identity(3)).norm() == 0.0);

    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 0.5;
    CHECK_THROWS_AS(eval_matrix(MultiPoly::monomial({1, 1}), std::vector<CMatrix>{s, a}), DilationError);
}

TEST_CASE("1x1 evaluation matches scalar evaluation exactly") {
    SplitMix64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const MultiPoly p = testing::random_poly(k, 5, rng);
        std::vector<Complex> z;
        std::vector<CMatrix> ops;
        for (std::size_t i = 0; i < k; ++i) {
            z.push_back(testing::random_disc_point(rng, 1.0));
            ops.push_back(CMatrix::Constant(1, 1, z.back()));
        }
        CHECK(eval_matrix(p, ops)(0, 0) == eval_scalar(p, z));
    }
}

TEST_CASE("sup_norm_torus examples") {
    for (int m : {1, 2, 7, 64}) CHECK(sup_norm_torus(MultiPoly::monomial({1}), m) == doctest::Approx(1.0));
    const MultiPoly one_plus_z = MultiPoly::constant(1, 1.0) + MultiPoly::monomial({1});
    for (int m : {2, 5, 64}) CHECK(sup_norm_torus(one_plus_z, m) == doctest::Approx(2.0));
    CHECK_THROWS_AS(sup_norm_torus(one_plus_z, 0), DilationError);
}

TEST_CASE("grid sup is monotone under refinement and sub-additive") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 2));
        const MultiPoly p = testing::random_poly(k, 4, rng);
        const MultiPoly q = testing::random_poly(k, 4, rng);
        const int m = static_cast<int>(rng.uniform_int(3, 20));
        CHECK(sup_norm_torus(p, 2 * m) >= sup_norm_torus(p, m) - 1e-12);
        CHECK(sup_norm_torus(p + q, m) <= sup_norm_torus(p, m) + sup_norm_torus(q, m) + 1e-12);
    }
}

TEST_CASE("Holbrook polynomial sup norm") {
    const MultiPoly p = holbrook_polynomial();
    const double s256 = sup_norm_torus(p, 256);
    const double s512 = sup_norm_torus(p, 512);
    CHECK(std::abs(s256 - s512) <= 1e-3);
    // Brute-force numpy grid search gives 5, attained at (1, 1, −1).
    CHECK(s512 == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("classical von Neumann for a single contraction") {
    SplitMix64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        const CMatrix t = random_contraction(rng.uniform_int(1, 4), rng, 0.2);
        const MultiPoly p = testing::random_poly(1, 5, rng);
        CHECK(operator_norm(eval_matrix(p, std::vector<CMatrix>{t})) <=
              sup_norm_torus(p, 4096) * (1.0 + 1e-5));
    }
}
