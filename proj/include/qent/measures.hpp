#pragma once

// Concurrence, negativity, entanglement of formation and participation ratio
// of two-qubit states.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "qent/error.hpp"
#include "qent/linalg.hpp"
#include "qent/states.hpp"

namespace qent {

inline constexpr double kFactorTolerance = 1e-10;
inline constexpr double kRoundoff = 1e-12;

namespace detail {

// max(0, x) for a measure bounded above by 1. Overshoot past 1 by more than
// round-off means the computation is broken.
inline double clamp_measure(double x, const char* what) {
    if (x > 1.0 + kRoundoff || std::isnan(x)) throw ConsistencyError(std::string(what) + " left [0, 1]");
    return std::clamp(x, 0.0, 1.0);
}

}  // namespace detail

/// Q = F^T (sigma_y (x) sigma_y) F for any factor F with F F^H = rho. The
/// singular values of Q do not depend on which factor is used. A pure
/// state's vector is a valid 4x1 factor, giving a 1x1 Q.
template <std::size_t K>
CMatrix<K, K> q_matrix(const DensityMatrix& rho, const CMatrix<4, K>& factor) {
    if (frobenius_norm(factor * adjoint(factor) - rho.matrix()) > kFactorTolerance)
        throw DomainError("q_matrix: factor does not reproduce rho");
    return transpose(factor) * spin_flip() * factor;
}

/// Descending singular values of Q built from the Hermitian square root.
inline std::array<double, 4> concurrence_singular_values(const DensityMatrix& rho) {
    const Mat4 root = psd_sqrt(rho.matrix());
    return singular_values(transpose(root) * spin_flip() * root);
}

/// s1 - s2 - s3 - s4 before thresholding; negative for separable states.
inline double concurrence_margin(const DensityMatrix& rho) {
    const auto s = concurrence_singular_values(rho);
    return s[0] - s[1] - s[2] - s[3];
}

/// C = max(0, s1 - s2 - s3 - s4) over the singular values of Q.
inline double concurrence(const DensityMatrix& rho) {
    return detail::clamp_measure(concurrence_margin(rho), "concurrence");
}

/// Concurrence of a pure state, 2 |det psi~|.
inline double concurrence(const PureState& psi) {
    const Mat2 t = psi.tilde();
    return detail::clamp_measure(2.0 * std::abs(t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0)), "concurrence");
}

/// -2 lambda_min(rho^{T_B}) before thresholding.
inline double negativity_margin(const DensityMatrix& rho) {
    return -2.0 * herm_eig(partial_transpose(rho.matrix())).eigenvalues[0];
}

/// E_N = max(0, -2 lambda_min(rho^{T_B})).
inline double negativity(const DensityMatrix& rho) {
    return detail::clamp_measure(negativity_margin(rho), "negativity");
}

/// Binary entropy (base 2) of mu = (1 +- sqrt(1 - C^2)) / 2.
inline double eof_from_concurrence(double c) {
    if (!(c >= -kRoundoff && c <= 1.0 + kRoundoff)) throw DomainError("eof_from_concurrence: C must lie in [0, 1]");
    c = std::clamp(c, 0.0, 1.0);
    const double root = std::sqrt((1.0 - c) * (1.0 + c));
    // Small root of mu^2 - mu + C^2/4 = 0 without cancellation.
    const double mu2 = c * c / (2.0 * (1.0 + root));
    const double mu1 = 1.0 - mu2;
    auto xlog = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    return std::clamp(-xlog(mu1) - xlog(mu2), 0.0, 1.0);
}

/// R = 1 / Tr rho^2, between 1 (pure) and 4 (maximally mixed).
inline double participation_ratio(const DensityMatrix& rho) { return 1.0 / rho.purity(); }

/// Partial-transpose spectrum of a pure state with Schmidt coefficients
/// (s1, s2): {s1^2, s1 s2, -s1 s2, s2^2}.
inline std::array<double, 4> pure_negativity_spectrum(double sigma1, double sigma2) {
    if (!(sigma1 >= sigma2 && sigma2 >= 0.0) || std::abs(sigma1 * sigma1 + sigma2 * sigma2 - 1.0) > 1e-10)
        throw DomainError("pure_negativity_spectrum: need sigma1 >= sigma2 >= 0 and sigma1^2 + sigma2^2 = 1");
    return {sigma1 * sigma1, sigma1 * sigma2, -sigma1 * sigma2, sigma2 * sigma2};
}

struct EntanglementReport {
    double concurrence;
    double negativity;
    double eof;  // bits
    double participation_ratio;
};

inline EntanglementReport report(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return {c, negativity(rho), eof_from_concurrence(c), participation_ratio(rho)};
}

}  // namespace qent
