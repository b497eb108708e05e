#pragma once

#include <cstdint>
#include <limits>

#include "dilatron/matrix_kernel.hpp"

namespace dilatron {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator; every
/// stochastic choice in the library and CLI is drawn from one of these so
/// results are reproducible from a single seed on any platform.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 42) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi].
    long uniform_int(long lo, long hi);

    /// Standard normal via Box-Muller (platform independent, unlike std::normal_distribution).
    double normal();

    /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    Complex complex_normal();

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

CMatrix random_gaussian(long rows, long cols, SplitMix64& rng);

/// Haar-distributed unitary (QR of a complex Gaussian with phase correction).
CMatrix random_unitary(long n, SplitMix64& rng);

/// W·diag(σ)·V* with Haar W, V and singular values drawn from [0, 1);
/// each singular value is set to exactly 1 with probability `unit_prob`.
CMatrix random_contraction(long n, SplitMix64& rng, double unit_prob = 0.0);

}  // namespace dilatron
