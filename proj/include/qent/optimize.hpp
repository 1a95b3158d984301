#pragma once

// Downhill-simplex (Nelder-Mead) search and the constrained C - E_N
// maximisations built on it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "qent/analytic.hpp"
#include "qent/error.hpp"
#include "qent/linalg.hpp"
#include "qent/measures.hpp"
#include "qent/rng.hpp"
#include "qent/spectrum.hpp"
#include "qent/states.hpp"

namespace qent {

struct SimplexOptions {
    int max_iterations = 2000;  // per simplex run
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double x_tolerance = 1e-9;   // simplex diameter (max-norm from best vertex)
    double f_tolerance = 1e-12;  // spread of objective values over the vertices
    // Initial simplex: x0 + step * e_i with step = relative_step * |x0_i|, or
    // zero_step when x0_i == 0.
    double relative_step = 0.05;
    double zero_step = 0.00025;
    // After convergence the simplex is rebuilt around the best vertex and the
    // search resumed, until a rebuild gains less than f_tolerance or this
    // many rebuilds have been done.
    int reinitializations = 3;
    int restarts = 50;
    Seed seed{};

    void validate() const {
        if (max_iterations < 1 || restarts < 1 || reinitializations < 0)
            throw DomainError("SimplexOptions: iteration and restart counts must be positive");
        if (!(reflection > 0 && expansion > 0 && contraction > 0 && shrink > 0))
            throw DomainError("SimplexOptions: simplex coefficients must be positive");
        if (!(x_tolerance > 0 && f_tolerance > 0 && relative_step > 0 && zero_step > 0))
            throw DomainError("SimplexOptions: tolerances and steps must be positive");
    }
};

struct SimplexResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

template <class F>
SimplexResult nelder_mead_run(F& objective, std::vector<double> x0, const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    SimplexResult out;
    auto eval = [&](const std::vector<double>& x) {
        ++out.evaluations;
        const double v = objective(std::span<const double>(x));
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += x0[i] != 0.0 ? opts.relative_step * std::abs(x0[i]) : opts.zero_step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

    std::vector<std::size_t> idx(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto order = [&] {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };
    auto along = [&](std::vector<double>& dst, double coef, const std::vector<double>& from) {
        for (std::size_t k = 0; k < n; ++k) dst[k] = centroid[k] + coef * (from[k] - centroid[k]);
    };

    order();
    while (out.iterations < opts.max_iterations) {
        const std::size_t best = idx.front(), worst = idx.back(), second = idx[n - 1];
        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(pts[idx[i]][k] - pts[best][k]));
        if (fv[worst] - fv[best] <= opts.f_tolerance || diameter <= opts.x_tolerance) {
            out.converged = true;
            break;
        }
        ++out.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[idx[i]][k];
        for (auto& c : centroid) c /= static_cast<double>(n);

        along(xr, -opts.reflection, pts[worst]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            along(xe, opts.expansion, xr);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            bool accepted = false;
            if (fr < fv[worst]) {
                along(xc, opts.contraction, xr);
                const double fc = eval(xc);
                if (fc <= fr) {
                    pts[worst] = xc;
                    fv[worst] = fc;
                    accepted = true;
                }
            } else {
                along(xc, opts.contraction, pts[worst]);
                const double fc = eval(xc);
                if (fc < fv[worst]) {
                    pts[worst] = xc;
                    fv[worst] = fc;
                    accepted = true;
                }
            }
            if (!accepted) {
                for (std::size_t i = 1; i <= n; ++i) {
                    auto& p = pts[idx[i]];
                    for (std::size_t k = 0; k < n; ++k) p[k] = pts[best][k] + opts.shrink * (p[k] - pts[best][k]);
                    fv[idx[i]] = eval(p);
                }
            }
        }
        order();
    }
    out.x = pts[idx.front()];
    out.f = fv[idx.front()];
    return out;
}

}  // namespace detail

/// Minimises `objective` from `x0` by the downhill-simplex method. Throws
/// DomainError if the objective is not finite at x0. Non-finite values
/// elsewhere are treated as +infinity.
template <class F>
SimplexResult nelder_mead(F&& objective, std::span<const double> x0, const SimplexOptions& opts) {
    opts.validate();
    std::vector<double> start(x0.begin(), x0.end());
    if (start.empty()) throw DomainError("nelder_mead: empty parameter vector");
    if (!std::isfinite(objective(std::span<const double>(start))))
        throw DomainError("nelder_mead: objective is not finite at the starting point");

    SimplexResult best = detail::nelder_mead_run(objective, start, opts);
    for (int r = 0; r < opts.reinitializations; ++r) {
        SimplexResult next = detail::nelder_mead_run(objective, best.x, opts);
        next.iterations += best.iterations;
        next.evaluations += best.evaluations;
        const bool gained = next.f < best.f - opts.f_tolerance;
        if (next.f <= best.f) {
            best = std::move(next);
        } else {
            best.iterations = next.iterations;
            best.evaluations = next.evaluations;
        }
        if (!gained) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Parametrisations

/// 16 reals -> lower-triangular G with real diagonal -> G G^H / Tr.
/// Layout: x[0..3] diagonal, then (re, im) of G(1,0), G(2,0), G(2,1),
/// G(3,0), G(3,1), G(3,2).
struct StateParam {
    static constexpr std::size_t size = 16;

    static Mat4 factor(std::span<const double> x) {
        if (x.size() != size) throw DomainError("StateParam: expected 16 parameters");
        Mat4 g{};
        for (std::size_t i = 0; i < 4; ++i) g(i, i) = x[i];
        std::size_t k = 4;
        for (std::size_t i = 1; i < 4; ++i)
            for (std::size_t j = 0; j < i; ++j, k += 2) g(i, j) = Complex{x[k], x[k + 1]};
        return g;
    }

    static DensityMatrix state(std::span<const double> x) { return DensityMatrix::from_factor(factor(x)); }
};

/// 16 reals -> Hermitian H (same layout as StateParam, imaginary parts
/// mirrored) -> U = exp(iH).
struct UnitaryParam {
    static constexpr std::size_t size = 16;

    static Mat4 generator(std::span<const double> x) {
        if (x.size() != size) throw DomainError("UnitaryParam: expected 16 parameters");
        Mat4 h{};
        for (std::size_t i = 0; i < 4; ++i) h(i, i) = x[i];
        std::size_t k = 4;
        for (std::size_t i = 1; i < 4; ++i)
            for (std::size_t j = 0; j < i; ++j, k += 2) {
                h(i, j) = Complex{x[k], x[k + 1]};
                h(j, i) = std::conj(h(i, j));
            }
        return h;
    }

    static Mat4 unitary(std::span<const double> x) { return expi_hermitian(generator(x)); }
};

// ---------------------------------------------------------------------------
// Constrained searches

struct OptimizationResult {
    DensityMatrix best_state;
    double objective = -std::numeric_limits<double>::infinity();
    double constraint_residual = std::numeric_limits<double>::infinity();
    bool feasible = false;
    int restarts_used = 0;
    int iterations_total = 0;
    std::vector<double> per_restart_bests;  // NaN for an infeasible restart
};

inline constexpr double kFeasibilityTolerance = 1e-6;
inline constexpr std::array<double, 3> kPenaltySchedule{1e2, 1e3, 1e4};
inline constexpr int kMultiplierRounds = 3;

inline double gap(const DensityMatrix& rho) { return concurrence(rho) - negativity(rho); }

namespace detail {

struct ConstrainedProblem {
    // Value of the equality-constrained function g(rho); target is subtracted.
    std::function<double(const DensityMatrix&)> constraint;
    double target;
    // Moves a near-feasible state onto the constraint surface.
    std::function<DensityMatrix(const DensityMatrix&)> restore;
};

inline std::vector<double> standard_normal_vector(Seed seed, std::size_t n) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

// Maximises C - E_N subject to constraint(rho) = target: quadratic-penalty
// stages, then multiplier updates at the final penalty weight, then an exact
// feasibility restoration of the optimum.
inline OptimizationResult maximize_gap(const ConstrainedProblem& prob, const SimplexOptions& opts) {
    opts.validate();
    OptimizationResult out;
    out.per_restart_bests.assign(static_cast<std::size_t>(opts.restarts), std::numeric_limits<double>::quiet_NaN());

    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<double> x =
            standard_normal_vector(derive(opts.seed, "restart", static_cast<std::uint64_t>(r)), StateParam::size);
        double multiplier = 0.0;
        double kappa = kPenaltySchedule.front();
        auto objective = [&](std::span<const double> p) {
            const DensityMatrix rho = StateParam::state(p);
            const double g = prob.constraint(rho) - prob.target;
            return -gap(rho) + multiplier * g + kappa * g * g;
        };
        for (double k : kPenaltySchedule) {
            kappa = k;
            auto res = nelder_mead(objective, x, opts);
            x = std::move(res.x);
            out.iterations_total += res.iterations;
        }
        for (int round = 0; round < kMultiplierRounds; ++round) {
            multiplier += 2.0 * kappa * (prob.constraint(StateParam::state(x)) - prob.target);
            auto res = nelder_mead(objective, x, opts);
            x = std::move(res.x);
            out.iterations_total += res.iterations;
        }

        const DensityMatrix rho = prob.restore(StateParam::state(x));
        const double residual = std::abs(prob.constraint(rho) - prob.target);
        ++out.restarts_used;
        if (residual > kFeasibilityTolerance) continue;
        const double value = gap(rho);
        out.per_restart_bests[static_cast<std::size_t>(r)] = value;
        if (!out.feasible || value > out.objective) {  // strict: lowest index wins ties
            out.feasible = true;
            out.objective = value;
            out.best_state = rho;
            out.constraint_residual = residual;
        }
    }
    if (!out.feasible) throw Error("constrained search: no restart reached a feasible state");
    return out;
}

// Bisection for t in [0, 1] with h((1-t) rho + t anchor) = 0, given h(rho)
// and h(anchor) of opposite sign.
inline DensityMatrix bisect_mixture(const DensityMatrix& rho, const DensityMatrix& anchor,
                                    const std::function<double(const DensityMatrix&)>& h) {
    auto mix = [&](double t) {
        return DensityMatrix::from_matrix((1.0 - t) * rho.matrix() + t * anchor.matrix());
    };
    const double h0 = h(rho);
    if (h0 == 0.0) return rho;
    if (h0 * h(anchor) > 0.0) return rho;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double hm = h(mix(mid));
        if (hm == 0.0) return mix(mid);
        if ((hm > 0.0) == (h0 > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    // The endpoint on the far side of the root overshoots by at most one
    // bisection step; take whichever side is closer.
    const DensityMatrix a = mix(lo), b = mix(hi);
    return std::abs(h(a)) <= std::abs(h(b)) ? a : b;
}

inline DensityMatrix top_eigenprojector(const DensityMatrix& rho) {
    const auto eig = herm_eig(rho.matrix());
    Vec4 v{};
    for (std::size_t k = 0; k < 4; ++k) v(k, 0) = eig.eigenvectors(k, 3);
    return DensityMatrix::from_factor(v);
}

// Maximally entangled pure state closest to the dominant eigenvector: the
// reshape U S V^H is replaced by U V^H / sqrt 2.
inline DensityMatrix nearest_maximally_entangled(const DensityMatrix& rho) {
    const auto eig = herm_eig(rho.matrix());
    Vec4 v{};
    for (std::size_t k = 0; k < 4; ++k) v(k, 0) = eig.eigenvectors(k, 3);
    const auto d = svd(reshape_to_matrix(v.data));
    return DensityMatrix::from_factor(flatten(d.u * adjoint(d.v)));
}

}  // namespace detail

/// Largest C - E_N found over states with participation ratio R_target.
inline OptimizationResult max_gap_fixed_R(double r_target, const SimplexOptions& opts) {
    if (!(r_target >= 1.0 && r_target <= 4.0)) throw DomainError("max_gap_fixed_R: R must lie in [1, 4]");
    detail::ConstrainedProblem prob;
    prob.constraint = [](const DensityMatrix& rho) { return participation_ratio(rho); };
    prob.target = r_target;
    prob.restore = [r_target](const DensityMatrix& rho) {
        // Work with purity 1/R: it is quadratic along a mixing segment.
        const double want = 1.0 / r_target;
        auto h = [want](const DensityMatrix& s) { return s.purity() - want; };
        const DensityMatrix anchor =
            h(rho) > 0.0 ? DensityMatrix::maximally_mixed() : detail::top_eigenprojector(rho);
        return detail::bisect_mixture(rho, anchor, h);
    };
    return detail::maximize_gap(prob, opts);
}

/// Largest C - E_N found over states with concurrence C_target.
inline OptimizationResult max_gap_fixed_C(double c_target, const SimplexOptions& opts) {
    if (!(c_target >= 0.0 && c_target <= 1.0)) throw DomainError("max_gap_fixed_C: C must lie in [0, 1]");
    detail::ConstrainedProblem prob;
    prob.constraint = [](const DensityMatrix& rho) { return concurrence(rho); };
    prob.target = c_target;
    prob.restore = [c_target](const DensityMatrix& rho) {
        auto h = [c_target](const DensityMatrix& s) { return concurrence(s) - c_target; };
        const DensityMatrix anchor =
            h(rho) > 0.0 ? DensityMatrix::maximally_mixed() : detail::nearest_maximally_entangled(rho);
        return detail::bisect_mixture(rho, anchor, h);
    };
    return detail::maximize_gap(prob, opts);
}

enum class Measure { concurrence, negativity };

/// Maximises the chosen measure over the unitary orbit U diag(lambda) U^H.
/// The search runs on the measure before its max(0, .) threshold so that
/// starts in the separable part of the orbit still have a direction to move.
/// `constraint_residual` is the largest deviation of the result's spectrum
/// from lambda.
inline OptimizationResult orbit_maximize(const Spectrum& lambda, Measure measure, const SimplexOptions& opts) {
    opts.validate();
    const Mat4 root = Mat4::diagonal(lambda.sqrt_values());
    auto state_of = [&](std::span<const double> x) { return DensityMatrix::from_factor(UnitaryParam::unitary(x) * root); };
    auto value_of = [measure](const DensityMatrix& rho) {
        return measure == Measure::concurrence ? concurrence(rho) : negativity(rho);
    };
    auto margin_of = [measure](const DensityMatrix& rho) {
        return measure == Measure::concurrence ? concurrence_margin(rho) : negativity_margin(rho);
    };
    auto objective = [&](std::span<const double> x) { return -margin_of(state_of(x)); };

    OptimizationResult out;
    out.per_restart_bests.assign(static_cast<std::size_t>(opts.restarts), 0.0);
    for (int r = 0; r < opts.restarts; ++r) {
        const auto x0 = detail::standard_normal_vector(derive(opts.seed, "orbit", static_cast<std::uint64_t>(r)),
                                                      UnitaryParam::size);
        const auto res = nelder_mead(objective, x0, opts);
        out.iterations_total += res.iterations;
        ++out.restarts_used;
        const DensityMatrix rho = state_of(res.x);
        const double value = value_of(rho);
        out.per_restart_bests[static_cast<std::size_t>(r)] = value;
        if (!out.feasible || value > out.objective) {
            out.feasible = true;
            out.objective = value;
            out.best_state = rho;
        }
    }
    auto eig = out.best_state.eigenvalues();
    std::reverse(eig.begin(), eig.end());
    out.constraint_residual = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        out.constraint_residual = std::max(out.constraint_residual, std::abs(eig[i] - lambda[i]));
    return out;
}

}  // namespace qent
