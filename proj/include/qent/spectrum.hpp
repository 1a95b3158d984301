#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>

#include "qent/error.hpp"

namespace qent {

/// Eigenvalues of a two-qubit state in descending order, non-negative,
/// summing to one within 1e-12.
class Spectrum {
public:
    /// Throws DomainError unless `values` is already a valid descending spectrum.
    /// Entries in [-1e-12, 0) are clamped to zero.
    explicit Spectrum(const std::array<double, 4>& values) : v_(values) {
        for (auto& x : v_) {
            if (!std::isfinite(x) || x < -kTolerance) throw DomainError("Spectrum: eigenvalues must be non-negative");
            x = std::max(x, 0.0);
        }
        for (std::size_t i = 0; i + 1 < 4; ++i)
            if (v_[i] < v_[i + 1]) throw DomainError("Spectrum: eigenvalues must be in descending order");
        double s = 0.0;
        for (double x : v_) s += x;
        if (std::abs(s - 1.0) > kTolerance) throw DomainError("Spectrum: eigenvalues must sum to 1");
    }

    /// Sorts `values` into descending order before validating.
    static Spectrum from_unsorted(std::array<double, 4> values) {
        std::sort(values.begin(), values.end(), std::greater<>());
        return Spectrum(values);
    }

    double operator[](std::size_t i) const { return v_[i]; }
    const std::array<double, 4>& values() const noexcept { return v_; }

    std::array<double, 4> sqrt_values() const {
        std::array<double, 4> r{};
        for (std::size_t i = 0; i < 4; ++i) r[i] = std::sqrt(v_[i]);
        return r;
    }

    double participation_ratio() const {
        double s = 0.0;
        for (double x : v_) s += x * x;
        return 1.0 / s;
    }

    static constexpr double kTolerance = 1e-12;

private:
    std::array<double, 4> v_;
};

}  // namespace qent
