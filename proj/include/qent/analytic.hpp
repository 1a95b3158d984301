#pragma once

// Closed forms for maximally entangled mixed states (states maximising both
// concurrence and negativity among all states with a given spectrum) and
// the extremal C - E_N curves derived from them.

#include <algorithm>
#include <cmath>

#include "qent/error.hpp"
#include "qent/spectrum.hpp"

namespace qent {

/// max(0, l1 - l3 - 2 sqrt(l2 l4)), eigenvalues descending.
inline double me_concurrence(const Spectrum& l) {
    return std::max(0.0, l[0] - l[2] - 2.0 * std::sqrt(l[1] * l[3]));
}

/// max(0, sqrt((l1 - l3)^2 + (l2 - l4)^2) - l2 - l4), eigenvalues descending.
inline double me_negativity(const Spectrum& l) {
    return std::max(0.0, std::hypot(l[0] - l[2], l[1] - l[3]) - l[1] - l[3]);
}

/// Largest C - E_N over rank-2 ME states with participation ratio R in [1, 2].
inline double max_gap_rank2(double r) {
    if (!(r >= 1.0 && r <= 2.0)) throw DomainError("max_gap_rank2: R must lie in [1, 2]");
    return 1.0 - 1.0 / std::sqrt(r);
}

/// C - E_N of rank-3 ME states with l1 = l2, R in [2, 3]:
/// (1 + 2a - sqrt(a - 4 + 15/R)) / 3 with a = sqrt(6/R - 2).
inline double max_gap_rank3(double r) {
    if (!(r >= 2.0 && r <= 3.0)) throw DomainError("max_gap_rank3: R must lie in [2, 3]");
    const double alpha = std::sqrt(std::max(0.0, -2.0 + 6.0 / r));
    return (1.0 + 2.0 * alpha - std::sqrt(alpha - 4.0 + 15.0 / r)) / 3.0;
}

/// Piecewise ME curve over the whole range of R: rank 2 on [1, 2], rank 3 on
/// [2, 3], and zero on [3, 4].
inline double me_gap_envelope(double r) {
    if (!(r >= 1.0 && r <= 4.0)) throw DomainError("me_gap_envelope: R must lie in [1, 4]");
    if (r <= 2.0) return max_gap_rank2(r);
    if (r <= 3.0) return max_gap_rank3(r);
    return 0.0;
}

struct GapAtConcurrence {
    double gap;
    Spectrum spectrum;
};

/// Maximal C - E_N at fixed concurrence, 1 - sqrt(C^2 + (1 - C)^2), and the
/// rank-2 spectrum (max(C, 1-C), min(C, 1-C), 0, 0) attaining it.
inline GapAtConcurrence max_gap_vs_C(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("max_gap_vs_C: C must lie in [0, 1]");
    const double hi = std::max(c, 1.0 - c);
    const double lo = std::min(c, 1.0 - c);
    return {1.0 - std::hypot(c, 1.0 - c), Spectrum({hi, lo, 0.0, 0.0})};
}

}  // namespace qent
