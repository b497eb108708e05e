#include "dilatron/random.hpp"

#include <cmath>
#include <numbers>

namespace dilatron {

long SplitMix64::uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>((*this)() % span);
}

double SplitMix64::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Complex SplitMix64::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CMatrix random_gaussian(long rows, long cols, SplitMix64& rng) {
    CMatrix g(rows, cols);
    for (long j = 0; j < cols; ++j) {
        for (long i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
    }
    return g;
}

CMatrix random_unitary(long n, SplitMix64& rng) {
    const CMatrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

CMatrix random_contraction(long n, SplitMix64& rng, double unit_prob) {
    const CMatrix w = random_unitary(n, rng);
    const CMatrix v = random_unitary(n, rng);
    RVector sigma(n);
    for (long i = 0; i < n; ++i) {
        sigma(i) = rng.uniform() < unit_prob ? 1.0 : rng.uniform();
    }
    return w * sigma.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace dilatron
