#include <doctest.h>

#include "dilatron/cpmap.hpp"
#include "dilatron/dilation_single.hpp"
#include "dilatron/random.hpp"

using namespace dilatron;

namespace {

CPMap transpose_map(long n) {
    std::vector<CMatrix> images;
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) {
            CMatrix e = CMatrix::Zero(n, n);
            e(b, a) = 1.0;
            images.push_back(e);
        }
    }
    return CPMap::from_unit_images(images);
}

CPMap depolarizing(long n) {
    std::vector<CMatrix> images;
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) images.push_back(a == b ? CMatrix(identity(n) / double(n)) : CMatrix::Zero(n, n));
    }
    return CPMap::from_unit_images(images);
}

// Rank of the Gram matrix of the vectorized Kraus operators.
long gram_rank(const std::vector<CMatrix>& kraus) {
    const auto d = static_cast<long>(kraus.size());
    CMatrix g(d, d);
    for (long i = 0; i < d; ++i) {
        for (long j = 0; j < d; ++j) g(i, j) = (kraus[i].adjoint() * kraus[j]).trace();
    }
    return numerical_rank(g, 1e-10);
}

}  // namespace

TEST_CASE("Choi matrix of the identity map") {
    const CPMap id = CPMap::from_kraus({identity(2)});
    CMatrix expected = CMatrix::Zero(4, 4);
    for (long r : {0, 3}) {
        for (long c : {0, 3}) expected(r, c) = 1.0;
    }
    CHECK((id.choi() - expected).norm() == 0.0);
    const std::vector<CMatrix> k = kraus_decompose(id);
    REQUIRE(k.size() == 1);
    const Complex phase = k[0](0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK((k[0] - phase * identity(2)).norm() < 1e-12);
}

TEST_CASE("Choi of a unitary conjugation is vec(U) vec(U)*") {
    SplitMix64 rng(201);
    const CMatrix u = random_unitary(3, rng);
    const CPMap phi = CPMap::from_kraus({u});
    const CVector v = vec(u);
    CHECK((phi.choi() - v * v.adjoint()).norm() < 1e-12);
    CHECK(index(phi) == 1);
    // The block layout agrees with the images of the matrix units.
    const CPMap again = CPMap::from_unit_images(phi.unit_images());
    CHECK((again.choi() - phi.choi()).norm() == 0.0);
    const CMatrix x = random_gaussian(3, 3, rng);
    CHECK((again.apply(x) - u * x * u.adjoint()).norm() < 1e-12);
}

TEST_CASE("vec stacks columns") {
    CMatrix a(2, 2);
    a << 1, 2, 3, 4;
    const CVector v = vec(a);
    CHECK(v(0) == Complex(1.0));
    CHECK(v(1) == Complex(3.0));
    CHECK(v(2) == Complex(2.0));
    CHECK(unvec(v, 2) == a);
}

TEST_CASE("transpose map is not CP") {
    const CPTest t = is_cp(transpose_map(2));
    CHECK_FALSE(t.cp);
    CHECK(std::abs(t.min_eigenvalue + 1.0) <= 1e-10);
    CHECK_THROWS_AS(index(transpose_map(2)), DilationError);
    CHECK_THROWS_AS(kraus_decompose(transpose_map(2)), DilationError);
}

TEST_CASE("Kraus-given maps and their mixtures are CP") {
    SplitMix64 rng(203);
    for (int trial = 0; trial < 10; ++trial) {
        const long n = rng.uniform_int(1, 3);
        std::vector<CMatrix> k1{random_gaussian(n, n, rng)}, k2{random_gaussian(n, n, rng), random_gaussian(n, n, rng)};
        CHECK(is_cp(CPMap::from_kraus(k1)).cp);
        const double s = rng.uniform();
        std::vector<CMatrix> mix;
        for (const CMatrix& a : k1) mix.push_back(std::sqrt(s) * a);
        for (const CMatrix& a : k2) mix.push_back(std::sqrt(1 - s) * a);
        CHECK(is_cp(CPMap::from_kraus(mix)).cp);
    }
}

TEST_CASE("index of two orthogonal conjugations and of depolarizing") {
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;  // tr(Z) = 0, so vec(Z) ⟂ vec(I)
    const CPMap half = CPMap::from_kraus({identity(2) / std::sqrt(2.0), z / std::sqrt(2.0)});
    CHECK(kraus_decompose(half).size() == 2);
    CHECK(index(half) == 2);

    const CPMap dep = depolarizing(2);
    CHECK(index(dep) == 4);
    CHECK(kraus_decompose(dep).size() == 4);
    CHECK(unit_norm(dep) == doctest::Approx(1.0));
}

TEST_CASE("index equals the Gram rank of the Kraus vectorizations") {
    SplitMix64 rng(207);
    for (int trial = 0; trial < 30; ++trial) {
        const long n = rng.uniform_int(1, 3);
        const long d = rng.uniform_int(1, n * n);
        std::vector<CMatrix> kraus;
        for (long i = 0; i < d; ++i) kraus.push_back(random_gaussian(n, n, rng));
        if (d >= 2 && rng.uniform() < 0.3) kraus.back() = kraus.front() * Complex(0.5, -1.0);
        const CPMap phi = CPMap::from_kraus(kraus);
        CHECK(index(phi) == gram_rank(kraus));

        // Kraus decomposition reproduces the map.
        const CPMap rebuilt = CPMap::from_kraus(kraus_decompose(phi));
        CHECK((rebuilt.choi() - phi.choi()).norm() <= 1e-10 * std::max(1.0, phi.choi().norm()));
    }
}

TEST_CASE("composition") {
    SplitMix64 rng(211);
    const CPMap phi = CPMap::from_kraus({random_gaussian(2, 2, rng), random_gaussian(2, 2, rng)});
    const CPMap psi = CPMap::from_kraus({random_gaussian(2, 2, rng)});
    const CMatrix x = random_gaussian(2, 2, rng);
    CHECK((compose(phi, psi).apply(x) - phi.apply(psi.apply(x))).norm() < 1e-12);
    const CPMap mixed = compose(transpose_map(2), psi);
    CHECK((mixed.apply(x) - psi.apply(x).transpose()).norm() < 1e-12);
}

TEST_CASE("compressed automorphisms have index one") {
    const CPMap id = automorphism_compression_check(identity(5), 2);
    CHECK(index(id) == 1);
    const CMatrix x = CMatrix::Random(2, 2);
    CHECK((id.apply(x) - x).norm() == 0.0);

    SplitMix64 rng(213);
    const CMatrix t = random_contraction(2, rng);
    const CPMap h = automorphism_compression_check(halmos_dilation(t).unitaries[0], 2);
    CHECK((h.apply(x) - t * x * t.adjoint()).norm() < 1e-12);
    CHECK(index(h) == 1);

    for (int trial = 0; trial < 10; ++trial) {
        CHECK(index(automorphism_compression_check(random_unitary(6, rng), 2)) == 1);
    }
    CHECK_THROWS_AS(automorphism_compression_check(0.5 * identity(3), 1), DilationError);
    CHECK_THROWS_AS(automorphism_compression_check(identity(3), 4), DilationError);
}
