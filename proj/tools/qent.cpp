// qent: two-qubit entanglement measures from the command line.
//
// Exit codes: 0 success / pass, 1 verification failure, 2 usage or parse
// error, 3 invalid state data.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qent/analytic.hpp"
#include "qent/io.hpp"
#include "qent/measures.hpp"
#include "qent/optimize.hpp"
#include "qent/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidState = 3;

using nlohmann::json;

// Grid lo, lo + step, ..., including hi when it is hit within round-off.
std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(std::min(hi, lo + static_cast<double>(i) * step));
    return g;
}

json result_json(const qent::OptimizationResult& r) {
    auto eig = r.best_state.eigenvalues();
    return {{"objective", r.objective},
            {"constraint_residual", r.constraint_residual},
            {"feasible", r.feasible},
            {"restarts_used", r.restarts_used},
            {"iterations_total", r.iterations_total},
            {"per_restart_bests", r.per_restart_bests},
            {"eigenvalues", std::vector<double>(eig.rbegin(), eig.rend())},
            {"state", qent::io::state_to_json(r.best_state)}};
}

int cmd_measures(const std::string& path) {
    const auto rho = qent::io::read_state_file(path);
    const auto rep = qent::report(rho);
    json out = {{"concurrence", rep.concurrence},
                {"negativity", rep.negativity},
                {"eof", rep.eof},
                {"participation_ratio", rep.participation_ratio}};
    std::cout << out.dump() << '\n';
    return kExitOk;
}

int cmd_verify(const std::string& name, long samples, std::uint64_t seed) {
    const auto suite = qent::parse_suite(name);
    if (!suite) {
        std::cerr << "unknown suite: " << name << " (expected inequality, pure, equality-class, separable-r3)\n";
        return kExitUsage;
    }
    const auto s = qent::run_suite(*suite, samples, qent::Seed{seed});
    std::cout << "suite=" << qent::suite_name(s.suite) << " samples=" << s.samples
              << " seed=" << seed << " max_violation=" << qent::io::format_number(s.max_violation)
              << " tolerance=" << qent::io::format_number(s.tolerance) << " result=" << (s.passed() ? "PASS" : "FAIL")
              << '\n';
    return s.passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_curve(int figure, double step, bool numeric, const qent::SimplexOptions& opts) {
    using qent::io::format_number;
    using qent::io::write_csv_row;
    if (figure == 2) {
        write_csv_row(std::cout, {"C", "gap"});
        for (double c : grid(0.0, 1.0, step)) write_csv_row(std::cout, {format_number(c), format_number(qent::max_gap_vs_C(c).gap)});
        return kExitOk;
    }
    if (numeric)
        write_csv_row(std::cout, {"R", "analytic", "numeric", "residual"});
    else
        write_csv_row(std::cout, {"R", "analytic"});
    for (double r : grid(1.0, 4.0, step)) {
        std::vector<std::string> row{format_number(r), format_number(qent::me_gap_envelope(r))};
        if (numeric) {
            const auto res = qent::max_gap_fixed_R(r, opts);
            row.push_back(format_number(res.objective));
            row.push_back(format_number(res.constraint_residual));
        }
        write_csv_row(std::cout, row);
    }
    return kExitOk;
}

int cmd_optimize(std::optional<double> fix_r, std::optional<double> fix_c, const qent::SimplexOptions& opts) {
    json out;
    if (fix_r) {
        const auto r = qent::max_gap_fixed_R(*fix_r, opts);
        out = result_json(r);
        out["mode"] = "fix-r";
        out["target"] = *fix_r;
        out["analytic"] = qent::me_gap_envelope(*fix_r);
    } else {
        const auto r = qent::max_gap_fixed_C(*fix_c, opts);
        out = result_json(r);
        out["mode"] = "fix-c";
        out["target"] = *fix_c;
        out["analytic"] = qent::max_gap_vs_C(*fix_c).gap;
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_orbit_max(const std::string& spectrum_text, const std::string& measure, const qent::SimplexOptions& opts) {
    const auto lambda = qent::Spectrum::from_unsorted(qent::io::parse_spectrum_list(spectrum_text));
    qent::Measure m;
    double analytic;
    if (measure == "C") {
        m = qent::Measure::concurrence;
        analytic = qent::me_concurrence(lambda);
    } else if (measure == "EN") {
        m = qent::Measure::negativity;
        analytic = qent::me_negativity(lambda);
    } else {
        std::cerr << "unknown measure: " << measure << " (expected C or EN)\n";
        return kExitUsage;
    }
    json out = result_json(qent::orbit_maximize(lambda, m, opts));
    out["measure"] = measure;
    out["spectrum"] = lambda.values();
    out["analytic"] = analytic;
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit concurrence, negativity and C - E_N extremal curves"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int restarts = qent::SimplexOptions{}.restarts;
    int max_iterations = qent::SimplexOptions{}.max_iterations;
    auto add_search_flags = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Master seed (default 0)");
        cmd->add_option("--restarts", restarts, "Independent simplex restarts")->check(CLI::PositiveNumber);
        cmd->add_option("--max-iterations", max_iterations, "Iteration cap per simplex run")->check(CLI::PositiveNumber);
    };

    std::string state_path;
    auto* measures = app.add_subcommand("measures", "Concurrence, negativity, EoF and participation ratio of a state file");
    measures->add_option("file", state_path, "State file (JSON)")->required();

    std::string suite;
    long samples = 10000;
    auto* verify = app.add_subcommand("verify", "Run a Monte-Carlo verification suite");
    verify->add_option("suite", suite, "inequality | pure | equality-class | separable-r3")->required();
    verify->add_option("--samples", samples, "Number of random states")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Master seed (default 0)");

    int figure = 1;
    double step = 0.1;
    bool numeric = false;
    auto* curve = app.add_subcommand("curve", "Emit plot data for the C - E_N curves as CSV");
    curve->add_option("--figure", figure, "1: gap versus R, 2: gap versus C")->required()->check(CLI::IsMember({1, 2}));
    curve->add_option("--step", step, "Grid spacing")->required()->check(CLI::PositiveNumber);
    curve->add_flag("--numeric", numeric, "Add the simplex-search column (figure 1)");
    add_search_flags(curve);

    std::optional<double> fix_r, fix_c;
    auto* optimize = app.add_subcommand("optimize", "Maximise C - E_N at fixed R or fixed C");
    auto* opt_r = optimize->add_option("--fix-r", fix_r, "Participation ratio in [1, 4]");
    auto* opt_c = optimize->add_option("--fix-c", fix_c, "Concurrence in [0, 1]");
    opt_r->excludes(opt_c);
    opt_c->excludes(opt_r);
    add_search_flags(optimize);

    std::string spectrum_text, measure_name;
    auto* orbit = app.add_subcommand("orbit-max", "Maximise C or E_N over states with a given spectrum");
    orbit->add_option("--spectrum", spectrum_text, "Four eigenvalues a,b,c,d")->required();
    orbit->add_option("--measure", measure_name, "C or EN")->required();
    add_search_flags(orbit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    qent::SimplexOptions opts;
    opts.seed = qent::Seed{seed};
    opts.restarts = restarts;
    opts.max_iterations = max_iterations;

    try {
        if (*measures) return cmd_measures(state_path);
        if (*verify) return cmd_verify(suite, samples, seed);
        if (*curve) return cmd_curve(figure, step, numeric, opts);
        if (*optimize) {
            if (!fix_r && !fix_c) {
                std::cerr << "optimize: one of --fix-r or --fix-c is required\n";
                return kExitUsage;
            }
            return cmd_optimize(fix_r, fix_c, opts);
        }
        if (*orbit) return cmd_orbit_max(spectrum_text, measure_name, opts);
    } catch (const qent::InvalidState& e) {
        std::cerr << "invalid state: " << e.what() << '\n';
        return kExitInvalidState;
    } catch (const qent::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qent::DomainError& e) {
        std::cerr << "bad argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qent::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
    return kExitUsage;
}
