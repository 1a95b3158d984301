#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qent/error.hpp"
#include "qent/linalg.hpp"
#include "qent/rng.hpp"
#include "qent/spectrum.hpp"

namespace qent {

inline constexpr double kStateTolerance = 1e-12;

/// Two-qubit density matrix in the basis |00>, |01>, |10>, |11>
/// (composite index (ii') = 2i + i', subsystem A major).
///
/// Always Hermitian, unit-trace and positive semidefinite within 1e-12;
/// `from_matrix` throws InvalidState naming the first violated invariant.
class DensityMatrix {
public:
    DensityMatrix() : m_(0.25 * Mat4::identity()) {}

    static DensityMatrix from_matrix(const Mat4& m) {
        if (!all_finite(m)) throw InvalidState("finiteness");
        if (hermiticity_defect(m) > kStateTolerance) throw InvalidState("hermiticity");
        if (std::abs(trace(m) - 1.0) > kStateTolerance) throw InvalidState("trace");
        if (herm_eig(m).eigenvalues[0] < -kStateTolerance) throw InvalidState("positivity");
        return DensityMatrix(0.5 * (m + adjoint(m)));
    }

    /// G G^H / Tr(G G^H); valid by construction. The zero matrix maps to I/4.
    template <std::size_t K>
    static DensityMatrix from_factor(const CMatrix<4, K>& g) {
        const Mat4 gg = g * adjoint(g);
        const double t = trace(gg).real();
        if (!(t > 0.0) || !std::isfinite(t)) return DensityMatrix();
        Mat4 m = (1.0 / t) * gg;
        return DensityMatrix(0.5 * (m + adjoint(m)));
    }

    static DensityMatrix maximally_mixed() { return DensityMatrix(); }

    const Mat4& matrix() const noexcept { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// Ascending eigenvalues.
    std::array<double, 4> eigenvalues() const { return herm_eigenvalues(m_); }

    double purity() const {
        double s = 0.0;
        for (const auto& x : m_.data) s += std::norm(x);
        return s;
    }

private:
    explicit DensityMatrix(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

/// psi_{(ii')} reshaped to the 2x2 matrix psi~_{ii'} (row i, column i').
inline Mat2 reshape_to_matrix(std::span<const Complex> psi) {
    if (psi.size() != 4) throw DomainError("reshape_to_matrix: state vector must have length 4");
    return Mat2{{psi[0], psi[1], psi[2], psi[3]}};
}

inline Vec4 flatten(const Mat2& m) { return Vec4{{m(0, 0), m(0, 1), m(1, 0), m(1, 1)}}; }

/// Normalised two-qubit state vector together with its 2x2 reshape.
class PureState {
public:
    /// Throws DomainError unless ||psi|| = 1 within 1e-12.
    explicit PureState(const Vec4& psi) : psi_(psi) {
        if (!all_finite(psi) || std::abs(frobenius_norm(psi) - 1.0) > kStateTolerance)
            throw DomainError("PureState: vector is not normalised");
    }

    /// Scales a non-zero vector to unit norm.
    static PureState normalized(const Vec4& v) {
        const double n = frobenius_norm(v);
        if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("PureState: cannot normalise a zero vector");
        return PureState((1.0 / n) * v);
    }

    const Vec4& vector() const noexcept { return psi_; }
    Mat2 tilde() const { return reshape_to_matrix(psi_.data); }
    DensityMatrix density() const { return DensityMatrix::from_factor(psi_); }

private:
    Vec4 psi_;
};

struct SchmidtCoefficients {
    double sigma1;
    double sigma2;
};

/// Singular values of psi~, sigma1 >= sigma2 >= 0 with sigma1^2 + sigma2^2 = 1.
inline SchmidtCoefficients schmidt(const PureState& psi) {
    const auto s = singular_values(psi.tilde());
    return {s[0], s[1]};
}

/// Weighted pure-state decomposition sum_i p_i |phi_i><phi_i|.
struct Ensemble {
    std::vector<double> weights;
    std::vector<PureState> members;

    DensityMatrix density() const {
        if (weights.size() != members.size() || weights.empty())
            throw DomainError("Ensemble: weights and members must be non-empty and of equal length");
        double total = 0.0;
        Mat4 m{};
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!(weights[i] > 0.0)) throw DomainError("Ensemble: weights must be positive");
            total += weights[i];
            m = m + weights[i] * outer(members[i].vector(), members[i].vector());
        }
        if (std::abs(total - 1.0) > kStateTolerance) throw DomainError("Ensemble: weights must sum to 1");
        return DensityMatrix::from_matrix(m);
    }
};

// ---------------------------------------------------------------------------
// Random states

/// Haar-random pure state (normalised vector of i.i.d. complex Gaussians).
inline PureState random_pure(Seed seed) {
    Rng rng(derive(seed, "random_pure"));
    return PureState::normalized(rng.ginibre<4, 1>());
}

/// G G^H / Tr with G a 4 x rank complex Gaussian matrix (induced measure).
inline DensityMatrix random_mixed(Seed seed, int rank) {
    if (rank < 1 || rank > 4) throw DomainError("random_mixed: rank must be in 1..4");
    Rng rng(derive(seed, "random_mixed"));
    CMatrix<4, 4> g{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(rank); ++j) g(i, j) = rng.complex_normal();
    return DensityMatrix::from_factor(g);
}

/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal
/// moved into Q.
template <std::size_t N>
CMatrix<N, N> random_unitary(Rng& rng) {
    CMatrix<N, N> q = rng.template ginibre<N, N>();
    // Modified Gram-Schmidt on columns; r_jj = ||column|| > 0 is real, so the
    // phase correction is already applied.
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t c = 0; c < j; ++c) {
            Complex dot{};
            for (std::size_t k = 0; k < N; ++k) dot += std::conj(q(k, c)) * q(k, j);
            for (std::size_t k = 0; k < N; ++k) q(k, j) -= dot * q(k, c);
        }
        double n = 0.0;
        for (std::size_t k = 0; k < N; ++k) n += std::norm(q(k, j));
        n = std::sqrt(n);
        for (std::size_t k = 0; k < N; ++k) q(k, j) /= n;
    }
    return q;
}

/// Haar element of SU(2).
inline Mat2 random_su2(Rng& rng) {
    Mat2 u = random_unitary<2>(rng);
    const Complex d = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    return std::pow(d, -0.5) * u;
}

/// U diag(lambda) U^H with U Haar on U(4).
inline DensityMatrix random_fixed_spectrum(Seed seed, const Spectrum& lambda) {
    Rng rng(derive(seed, "random_fixed_spectrum"));
    const Mat4 u = random_unitary<4>(rng);
    return DensityMatrix::from_factor(u * Mat4::diagonal(lambda.sqrt_values()));
}

/// Flat Dirichlet(1) weights via normalised exponentials.
inline std::vector<double> random_simplex_weights(Rng& rng, std::size_t k) {
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = rng.exponential());
    for (auto& x : w) x /= total;
    return w;
}

/// Random 2x2 positive-semidefinite Hermitian matrix with unit Frobenius
/// norm: symmetrise a Gaussian matrix, shift by |lambda_min| if indefinite.
inline Mat2 random_psdh(Rng& rng) {
    const Mat2 g = rng.ginibre<2, 2>();
    Mat2 h = 0.5 * (g + adjoint(g));
    const double lmin = herm_eigenvalues(h)[0];
    if (lmin < 0.0) h = h + (-lmin) * Mat2::identity();
    return (1.0 / frobenius_norm(h)) * h;
}

/// (U (x) V) rho (U (x) V)^H. Throws DomainError for non-unitary factors.
inline DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Mat2& u, const Mat2& v) {
    if (unitarity_defect(u) > kStateTolerance || unitarity_defect(v) > kStateTolerance)
        throw DomainError("apply_local_unitary: factor is not unitary");
    const Mat4 w = kron(u, v);
    return DensityMatrix::from_matrix(w * rho.matrix() * adjoint(w));
}

/// Ensemble whose members all have PSD Hermitian reshapes, i.e. before the
/// final local rotation every member's negative partial-transpose eigenvector
/// is the singlet. Returned alongside the local rotation that is applied to
/// produce `equality_class_state`.
struct EqualityClassSample {
    Ensemble pre_rotation;
    Mat2 u;
    Mat2 v;
};

inline EqualityClassSample equality_class_sample(Seed seed, int k) {
    if (k < 1) throw DomainError("equality_class_state: need at least one mixture term");
    Rng rng(derive(seed, "equality_class_state"));
    EqualityClassSample out;
    out.pre_rotation.weights = random_simplex_weights(rng, static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out.pre_rotation.members.push_back(PureState::normalized(flatten(random_psdh(rng))));
    out.u = random_su2(rng);
    out.v = random_su2(rng);
    return out;
}

/// A random state with concurrence equal to negativity: local rotation of a
/// mixture of pure states with PSD Hermitian reshape.
inline DensityMatrix equality_class_state(Seed seed, int k) {
    const auto s = equality_class_sample(seed, k);
    return apply_local_unitary(s.pre_rotation.density(), s.u, s.v);
}

/// True iff the eigenvectors belonging to the negative partial-transpose
/// eigenvalue, U_i (x) V_i (0, 1, -1, 0)^T / sqrt 2 with psi~_i = U_i S_i V_i^H,
/// coincide up to a phase for every member. Members with a vanishing Schmidt
/// coefficient (product states) have no such eigenvector and are rejected.
inline bool ensemble_eigvec_condition(const Ensemble& ens) {
    if (ens.members.empty()) throw DomainError("ensemble_eigvec_condition: empty ensemble");
    const Vec4 singlet{{0.0, kInvSqrt2, -kInvSqrt2, 0.0}};
    std::vector<Vec4> vecs;
    for (const auto& m : ens.members) {
        const auto d = svd(m.tilde());
        if (d.singular_values[1] <= 1e-10)
            throw DomainError("ensemble_eigvec_condition: member has a vanishing Schmidt coefficient");
        vecs.push_back(kron(d.u, d.v) * singlet);
    }
    for (std::size_t i = 1; i < vecs.size(); ++i) {
        const double overlap = std::abs((adjoint(vecs[0]) * vecs[i])(0, 0));
        if (overlap < 1.0 - 1e-8) return false;
    }
    return true;
}

}  // namespace qent
