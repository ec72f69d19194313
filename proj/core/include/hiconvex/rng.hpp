#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hiconvex {

/**
 * Seeded random source with explicit variate transforms.
 *
 * std::mt19937_64 output is pinned by the standard, but the distribution
 * classes are not; the transforms below are hand-rolled so that a given seed
 * produces identical streams on every platform and standard library.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential with unit mean via inversion.
    double exponential() { return -std::log1p(-uniform01()); }

    // Uniform integer in [lo, hi] by rejection-free scaling (bias < 2^-53).
    long uniform_int(long lo, long hi) {
        const double u = uniform01();
        const long span = hi - lo + 1;
        long v = lo + static_cast<long>(u * static_cast<double>(span));
        if (v > hi) v = hi;
        return v;
    }

    // Stable derived seed for sub-stream k (splitmix64 finalizer).
    static std::uint64_t split(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace hiconvex
