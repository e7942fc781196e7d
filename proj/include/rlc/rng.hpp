#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rlc/core.hpp"

namespace rlc {

/// splitmix64 step; used to derive independent per-trial seeds from a master
/// seed without correlation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

/// mt19937_64 with hand-rolled uniform/normal draws. The standard pins the
/// engine's output bit-for-bit, and the draw algorithms below are fixed here,
/// so a seed reproduces the same stream on every build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t nextU64() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error("Rng::below: empty range");
        const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller (pair cached).
    double normal() {
        if (haveSpare_) {
            haveSpare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        haveSpare_ = true;
        return r * std::cos(a);
    }

    /// Deterministic Fisher-Yates shuffle of indices [0, n).
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(idx[i - 1], idx[j]);
        }
        return idx;
    }

    /// First k entries of a random permutation (sampling without replacement).
    std::vector<std::size_t> sampleWithoutReplacement(std::size_t n, std::size_t k) {
        if (k > n) throw Error("Rng: sample larger than population");
        auto idx = permutation(n);
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 engine_;
    bool haveSpare_ = false;
    double spare_ = 0.0;
};

}  // namespace rlc
