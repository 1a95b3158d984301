#pragma once

// Reproducible random streams.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Normal deviates use Box-Muller on 53-bit uniforms instead of
// std::normal_distribution (whose algorithm is implementation-defined), so a
// given seed produces the same numbers on every platform.
//
// Substreams: a master Seed plus a label string and an index are hashed with
// SplitMix64 into the engine seed, so independent consumers (restart 7 of an
// optimisation, sample 123 of a verification suite) never share state.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

#include "qent/linalg.hpp"

namespace qent {

struct Seed {
    std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of substream (master, label, index).
inline Seed derive(Seed master, std::string_view label, std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(master.value);
    for (unsigned char ch : label) h = splitmix64(h ^ ch);
    return Seed{splitmix64(h ^ splitmix64(index))};
}

class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed.value) {}

    /// Uniform in (0, 1).
    double uniform() {
        for (;;) {
            const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex{re, im} * kInvSqrt2;
    }

    double exponential() { return -std::log(uniform()); }

    template <std::size_t R, std::size_t C>
    CMatrix<R, C> ginibre() {
        CMatrix<R, C> g{};
        for (auto& x : g.data) x = complex_normal();
        return g;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qent
