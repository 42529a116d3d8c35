#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "shf/rational.hpp"

namespace shf {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic substream: seed and a path of indices (e.g. stratum, trial)
// are folded through splitmix64 and feed a 64-bit Mersenne twister.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    static Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t x = seed;
        for (auto k : path) x = splitmix64(x + (k + 1) * 0x9E3779B97F4A7C15ULL);
        return Rng(x);
    }

    std::uint64_t next() { return eng_(); }

    // uniform in [0, n) by rejection, independent of library distributions
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % n;
    }

    // uniform integer in [lo, hi]
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

    // uniform over the S integers in [-floor(S/2), S - 1 - floor(S/2)]
    Rational centered(std::uint64_t S) {
        return Rational(static_cast<long>(below(S)) - static_cast<long>(S / 2));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace shf
