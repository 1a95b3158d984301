#pragma once

// Monte-Carlo verification suites: each draws `samples` random states from
// seed-derived substreams and records the largest violation of one
// property.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qent/error.hpp"
#include "qent/measures.hpp"
#include "qent/rng.hpp"
#include "qent/states.hpp"

namespace qent {

enum class Suite { inequality, pure, equality_class, separable_r3 };

struct VerifySummary {
    Suite suite;
    long samples = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed() const { return max_violation <= tolerance; }
};

inline std::optional<Suite> parse_suite(std::string_view name) {
    if (name == "inequality") return Suite::inequality;
    if (name == "pure") return Suite::pure;
    if (name == "equality-class") return Suite::equality_class;
    if (name == "separable-r3") return Suite::separable_r3;
    return std::nullopt;
}

inline std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::inequality: return "inequality";
        case Suite::pure: return "pure";
        case Suite::equality_class: return "equality-class";
        case Suite::separable_r3: return "separable-r3";
    }
    return "?";
}

/// Random state with participation ratio above 3: flat Dirichlet spectrum
/// rejected until Tr rho^2 < 1/3, then rotated by a Haar unitary.
inline DensityMatrix random_state_above_r3(Seed seed) {
    Rng rng(derive(seed, "spectrum_above_r3"));
    for (;;) {
        const auto w = random_simplex_weights(rng, 4);
        double purity = 0.0;
        for (double x : w) purity += x * x;
        if (purity < 1.0 / 3.0) return random_fixed_spectrum(seed, Spectrum::from_unsorted({w[0], w[1], w[2], w[3]}));
    }
}

inline VerifySummary run_suite(Suite suite, long samples, Seed seed) {
    if (samples < 1) throw DomainError("verify: samples must be at least 1");
    VerifySummary out{suite, samples, 0.0, 0.0};
    const std::string_view label = suite_name(suite);
    for (long i = 0; i < samples; ++i) {
        const Seed s = derive(seed, label, static_cast<std::uint64_t>(i));
        double v = 0.0;
        switch (suite) {
            case Suite::inequality: {
                // C >= E_N
                const auto rho = random_mixed(s, static_cast<int>(i % 4) + 1);
                v = negativity(rho) - concurrence(rho);
                out.tolerance = 1e-10;
                break;
            }
            case Suite::pure: {
                // C == E_N
                const auto rho = random_pure(s).density();
                v = std::abs(concurrence(rho) - negativity(rho));
                out.tolerance = 1e-10;
                break;
            }
            case Suite::equality_class: {
                static constexpr int ks[] = {1, 2, 4, 8};
                const auto rho = equality_class_state(s, ks[i % 4]);
                v = std::abs(concurrence(rho) - negativity(rho));
                out.tolerance = 1e-8;
                break;
            }
            case Suite::separable_r3: {
                // R > 3 implies separable
                const auto rho = random_state_above_r3(s);
                v = std::max(concurrence(rho), negativity(rho));
                out.tolerance = 1e-10;
                break;
            }
        }
        out.max_violation = i == 0 ? v : std::max(out.max_violation, v);
    }
    return out;
}

}  // namespace qent
