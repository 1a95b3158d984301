#pragma once

// Small fixed-size dense complex linear algebra: just enough for two-qubit
// density matrices (4x4) and their subsystem factors (2x2).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <utility>

#include "qent/error.hpp"

namespace qent {

using Complex = std::complex<double>;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Row-major complex matrix with compile-time dimensions.
template <std::size_t R, std::size_t C>
struct CMatrix {
    static constexpr std::size_t rows = R;
    static constexpr std::size_t cols = C;

    std::array<Complex, R * C> data{};

    constexpr Complex& operator()(std::size_t i, std::size_t j) { return data[i * C + j]; }
    constexpr const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * C + j]; }

    static constexpr CMatrix zero() { return {}; }

    static constexpr CMatrix identity()
        requires(R == C)
    {
        CMatrix m{};
        for (std::size_t i = 0; i < R; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(const std::array<double, R>& d)
        requires(R == C)
    {
        CMatrix m{};
        for (std::size_t i = 0; i < R; ++i) m(i, i) = d[i];
        return m;
    }

    friend bool operator==(const CMatrix&, const CMatrix&) = default;
};

using Mat2 = CMatrix<2, 2>;
using Mat4 = CMatrix<4, 4>;
using Vec4 = CMatrix<4, 1>;

template <std::size_t R, std::size_t C>
CMatrix<R, C> operator+(CMatrix<R, C> a, const CMatrix<R, C>& b) {
    for (std::size_t k = 0; k < R * C; ++k) a.data[k] += b.data[k];
    return a;
}

template <std::size_t R, std::size_t C>
CMatrix<R, C> operator-(CMatrix<R, C> a, const CMatrix<R, C>& b) {
    for (std::size_t k = 0; k < R * C; ++k) a.data[k] -= b.data[k];
    return a;
}

template <std::size_t R, std::size_t C>
CMatrix<R, C> operator*(Complex s, CMatrix<R, C> a) {
    for (auto& x : a.data) x *= s;
    return a;
}

template <std::size_t R, std::size_t C>
CMatrix<R, C> operator*(double s, CMatrix<R, C> a) {
    for (auto& x : a.data) x *= s;
    return a;
}

template <std::size_t R, std::size_t K, std::size_t C>
CMatrix<R, C> operator*(const CMatrix<R, K>& a, const CMatrix<K, C>& b) {
    CMatrix<R, C> out{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <std::size_t R, std::size_t C>
CMatrix<C, R> adjoint(const CMatrix<R, C>& a) {
    CMatrix<C, R> out{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

template <std::size_t R, std::size_t C>
CMatrix<C, R> transpose(const CMatrix<R, C>& a) {
    CMatrix<C, R> out{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out(j, i) = a(i, j);
    return out;
}

template <std::size_t R, std::size_t C>
CMatrix<R, C> conj(CMatrix<R, C> a) {
    for (auto& x : a.data) x = std::conj(x);
    return a;
}

template <std::size_t N>
Complex trace(const CMatrix<N, N>& a) {
    Complex t{};
    for (std::size_t i = 0; i < N; ++i) t += a(i, i);
    return t;
}

template <std::size_t R, std::size_t C>
double frobenius_norm(const CMatrix<R, C>& a) {
    double s = 0.0;
    for (const auto& x : a.data) s += std::norm(x);
    return std::sqrt(s);
}

template <std::size_t R, std::size_t C>
double max_abs(const CMatrix<R, C>& a) {
    double m = 0.0;
    for (const auto& x : a.data) m = std::max(m, std::abs(x));
    return m;
}

template <std::size_t R, std::size_t C>
bool all_finite(const CMatrix<R, C>& a) {
    return std::all_of(a.data.begin(), a.data.end(),
                       [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

/// Largest entrywise deviation from Hermiticity, |H_ij - conj(H_ji)|.
template <std::size_t N>
double hermiticity_defect(const CMatrix<N, N>& h) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) d = std::max(d, std::abs(h(i, j) - std::conj(h(j, i))));
    return d;
}

template <std::size_t N>
double unitarity_defect(const CMatrix<N, N>& u) {
    return max_abs(adjoint(u) * u - CMatrix<N, N>::identity());
}

template <std::size_t R1, std::size_t C1, std::size_t R2, std::size_t C2>
CMatrix<R1 * R2, C1 * C2> kron(const CMatrix<R1, C1>& a, const CMatrix<R2, C2>& b) {
    CMatrix<R1 * R2, C1 * C2> out{};
    for (std::size_t i = 0; i < R1; ++i)
        for (std::size_t j = 0; j < C1; ++j)
            for (std::size_t k = 0; k < R2; ++k)
                for (std::size_t l = 0; l < C2; ++l) out(i * R2 + k, j * C2 + l) = a(i, j) * b(k, l);
    return out;
}

/// Outer product |v><w|.
template <std::size_t N>
CMatrix<N, N> outer(const CMatrix<N, 1>& v, const CMatrix<N, 1>& w) {
    return v * adjoint(w);
}

namespace pauli {
inline Mat2 x() { return Mat2{{0.0, 1.0, 1.0, 0.0}}; }
inline Mat2 y() { return Mat2{{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0}}; }
inline Mat2 z() { return Mat2{{1.0, 0.0, 0.0, -1.0}}; }
}  // namespace pauli

/// sigma_y (x) sigma_y, the spin-flip used by the concurrence.
inline Mat4 spin_flip() { return kron(pauli::y(), pauli::y()); }

/// Matrix unit e^{ij}: a single 1 at row i, column j.
template <std::size_t N>
CMatrix<N, N> matrix_unit(std::size_t i, std::size_t j) {
    CMatrix<N, N> e{};
    e(i, j) = 1.0;
    return e;
}

/// Swap operator P0 = sum_ij e^{ij} (x) e^{ji}; P0 (A (x) B) P0 = B (x) A.
inline Mat4 swap_operator() {
    Mat4 p{};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) p = p + kron(matrix_unit<2>(i, j), matrix_unit<2>(j, i));
    return p;
}

/// Partial transpose on subsystem B with composite index (ii') = 2i + i':
/// (rho^{T_B})_{(ii'),(jj')} = rho_{(ij'),(ji')}.
inline Mat4 partial_transpose(const Mat4& rho) {
    Mat4 out{};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t ip = 0; ip < 2; ++ip)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t jp = 0; jp < 2; ++jp) out(2 * i + ip, 2 * j + jp) = rho(2 * i + jp, 2 * j + ip);
    return out;
}

// ---------------------------------------------------------------------------
// Eigen- and singular-value decompositions (cyclic Jacobi)

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kMaxJacobiSweeps = 100;

template <std::size_t N>
struct HermEigResult {
    std::array<double, N> eigenvalues{};  // ascending
    CMatrix<N, N> eigenvectors{};         // column i pairs with eigenvalue i
};

namespace detail {

// 2x2 unitary J that diagonalises the Hermitian block [[app, apq], [conj(apq), aqq]]
// by congruence J^H A J. Entries returned as (Jpp, Jpq, Jqp, Jqq).
struct JacobiRotation {
    Complex pp, pq, qp, qq;
};

inline JacobiRotation hermitian_rotation(double app, double aqq, Complex apq) {
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;  // e^{i phi}
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex ph = std::conj(phase);
    return {c, s, -s * ph, c * ph};
}

template <std::size_t N>
double off_diagonal_norm(const CMatrix<N, N>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

template <std::size_t N>
void permute_columns(CMatrix<N, N>& m, const std::array<std::size_t, N>& order) {
    const CMatrix<N, N> src = m;
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i) m(i, j) = src(i, order[j]);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps in fixed
/// (p, q) order. Throws DomainError when `h` is not Hermitian within 1e-12
/// (relative to its largest entry when that exceeds 1).
template <std::size_t N>
HermEigResult<N> herm_eig(const CMatrix<N, N>& h) {
    if (!all_finite(h)) throw DomainError("herm_eig: non-finite entries");
    const double scale = std::max(1.0, max_abs(h));
    if (hermiticity_defect(h) > kHermitianTolerance * scale) throw DomainError("herm_eig: matrix is not Hermitian");

    CMatrix<N, N> a = 0.5 * (h + adjoint(h));
    CMatrix<N, N> v = CMatrix<N, N>::identity();
    const double stop = kJacobiTolerance * std::max(frobenius_norm(a), 1e-300);

    for (int sweep = 0; sweep < kMaxJacobiSweeps && detail::off_diagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                if (std::abs(a(p, q)) == 0.0) continue;
                const auto j = detail::hermitian_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
                // a <- a J
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * j.pp + akq * j.qp;
                    a(k, q) = akp * j.pq + akq * j.qq;
                }
                // a <- J^H a
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(j.pp) * apk + std::conj(j.qp) * aqk;
                    a(q, k) = std::conj(j.pq) * apk + std::conj(j.qq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * j.pp + vkq * j.qp;
                    v(k, q) = vkp * j.pq + vkq * j.qq;
                }
            }
        }
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermEigResult<N> out;
    for (std::size_t i = 0; i < N; ++i) out.eigenvalues[i] = a(order[i], order[i]).real();
    out.eigenvectors = v;
    detail::permute_columns(out.eigenvectors, order);
    return out;
}

template <std::size_t N>
std::array<double, N> herm_eigenvalues(const CMatrix<N, N>& h) {
    return herm_eig(h).eigenvalues;
}

template <std::size_t N>
struct SvdResult {
    CMatrix<N, N> u{};
    std::array<double, N> singular_values{};  // descending
    CMatrix<N, N> v{};                        // m = u diag(s) v^H
};

/// Singular value decomposition by one-sided (Hestenes) Jacobi: columns of
/// M V are orthogonalised pairwise until every pair is orthogonal to
/// working precision.
template <std::size_t N>
SvdResult<N> svd(const CMatrix<N, N>& m) {
    if (!all_finite(m)) throw DomainError("svd: non-finite entries");

    CMatrix<N, N> a = m;
    CMatrix<N, N> v = CMatrix<N, N>::identity();
    constexpr double eps = 1e-15;

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                for (std::size_t k = 0; k < N; ++k) {
                    alpha += std::norm(a(k, p));
                    beta += std::norm(a(k, q));
                    gamma += std::conj(a(k, p)) * a(k, q);
                }
                if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
                rotated = true;
                const auto j = detail::hermitian_rotation(alpha, beta, gamma);
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * j.pp + akq * j.qp;
                    a(k, q) = akp * j.pq + akq * j.qq;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * j.pp + vkq * j.qp;
                    v(k, q) = vkp * j.pq + vkq * j.qq;
                }
            }
        }
        if (!rotated) break;
    }

    std::array<double, N> sigma{};
    for (std::size_t j = 0; j < N; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < N; ++k) s += std::norm(a(k, j));
        sigma[j] = std::sqrt(s);
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult<N> out;
    out.v = v;
    detail::permute_columns(out.v, order);
    const double tiny = eps * std::max(sigma[order[0]], 1e-300);
    std::size_t filled = 0;
    for (std::size_t j = 0; j < N; ++j) {
        const double s = sigma[order[j]];
        out.singular_values[j] = s;
        if (s > tiny) {
            for (std::size_t k = 0; k < N; ++k) out.u(k, j) = a(k, order[j]) / s;
            ++filled;
        }
    }
    // Complete U with an orthonormal basis of the complement (Gram-Schmidt
    // over the standard basis, twice for stability).
    std::size_t e = 0;
    for (std::size_t j = filled; j < N; ++j) {
        for (; e < N; ++e) {
            CMatrix<N, 1> w{};
            w(e, 0) = 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t c = 0; c < j; ++c) {
                    Complex dot{};
                    for (std::size_t k = 0; k < N; ++k) dot += std::conj(out.u(k, c)) * w(k, 0);
                    for (std::size_t k = 0; k < N; ++k) w(k, 0) -= dot * out.u(k, c);
                }
            const double nw = frobenius_norm(w);
            if (nw > 1e-6) {
                for (std::size_t k = 0; k < N; ++k) out.u(k, j) = w(k, 0) / nw;
                ++e;
                break;
            }
        }
    }
    return out;
}

template <std::size_t N>
std::array<double, N> singular_values(const CMatrix<N, N>& m) {
    return svd(m).singular_values;
}

inline constexpr double kPsdTolerance = 1e-12;

/// Hermitian positive-semidefinite square root M (M M^H = rho). Eigenvalues
/// in [-1e-12, 0) are clamped to zero; anything more negative is rejected.
template <std::size_t N>
CMatrix<N, N> psd_sqrt(const CMatrix<N, N>& rho) {
    const auto eig = herm_eig(rho);
    if (eig.eigenvalues[0] < -kPsdTolerance) throw InvalidState("positivity");
    std::array<double, N> root{};
    for (std::size_t i = 0; i < N; ++i) root[i] = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
    const auto& w = eig.eigenvectors;
    return w * CMatrix<N, N>::diagonal(root) * adjoint(w);
}

/// exp(iH) for Hermitian H via its eigendecomposition.
template <std::size_t N>
CMatrix<N, N> expi_hermitian(const CMatrix<N, N>& h) {
    const auto eig = herm_eig(h);
    CMatrix<N, N> d{};
    for (std::size_t i = 0; i < N; ++i) d(i, i) = std::polar(1.0, eig.eigenvalues[i]);
    return eig.eigenvectors * d * adjoint(eig.eigenvectors);
}

}  // namespace qent
