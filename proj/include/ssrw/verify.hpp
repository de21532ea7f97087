// verify.hpp — the self-check suite behind `ssrw verify`.
//
// Each suite records how many checks ran, the worst residual, and every failed
// check with observed/expected/tolerance. The JSON report has no timings, so
// two runs with the same config are byte-identical.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssrw/branching.hpp"
#include "ssrw/config.hpp"
#include "ssrw/er_graph.hpp"
#include "ssrw/exact_oracle.hpp"
#include "ssrw/prior.hpp"
#include "ssrw/ssrw_process.hpp"
#include "ssrw/walk.hpp"

namespace ssrw {

struct CheckFailure {
    std::string check;
    double observed;
    double expected;
    double tolerance;
};

struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    double worst = 0.0;  // largest |observed - expected| / tolerance
    std::vector<CheckFailure> failures;

    bool passed() const { return failures.empty(); }

    // |observed - expected| <= tolerance
    void near(const std::string& check, double observed, double expected, double tolerance) {
        ++checks;
        const double err = std::abs(observed - expected);
        worst = std::max(worst, err / tolerance);
        if (!(err <= tolerance)) failures.push_back({check, observed, expected, tolerance});
    }

    // observed <= bound + slack
    void at_most(const std::string& check, double observed, double bound, double slack = 0.0) {
        ++checks;
        if (!(observed <= bound + slack)) failures.push_back({check, observed, bound, slack});
    }

    void holds(const std::string& check, bool ok, double observed = 0.0, double expected = 0.0) {
        ++checks;
        if (!ok) failures.push_back({check, observed, expected, 0.0});
    }
};

struct VerifyTolerances {
    double exact = 1e-12;
    double series_integral = 1e-10;
    double fixed_point = 1e-12;
    double mc_se = 4.0;        // Monte Carlo checks pass within this many standard errors
    double uniform_c = 10.0;   // uniform constant for E[tau]/(n-1)

    static VerifyTolerances from(const ExperimentConfig& cfg) {
        VerifyTolerances t;
        t.exact = cfg.tolerance("exact", t.exact);
        t.series_integral = cfg.tolerance("series_integral", t.series_integral);
        t.fixed_point = cfg.tolerance("fixed_point", t.fixed_point);
        t.mc_se = cfg.tolerance("mc_se", t.mc_se);
        t.uniform_c = cfg.tolerance("uniform_c", t.uniform_c);
        return t;
    }
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;

    bool passed() const {
        return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["seed"] = seed;
        j["passed"] = passed();
        j["suites"] = nlohmann::ordered_json::array();
        for (const auto& s : suites) {
            nlohmann::ordered_json js;
            js["name"] = s.name;
            js["passed"] = s.passed();
            js["checks"] = s.checks;
            js["worst_relative_error"] = s.worst;
            js["failures"] = nlohmann::ordered_json::array();
            for (const auto& f : s.failures)
                js["failures"].push_back(
                    {{"check", f.check}, {"observed", f.observed}, {"expected", f.expected}, {"tolerance", f.tolerance}});
            j["suites"].push_back(std::move(js));
        }
        return j;
    }
};

namespace detail {

inline std::vector<double> p_grid_05() {
    std::vector<double> ps;
    for (int i = 1; i <= 19; ++i) ps.push_back(0.05 * i);
    return ps;
}

inline std::string label(const std::string& what, double a, double b) {
    return what + "(" + fmt_double(a) + "," + fmt_double(b) + ")";
}

} // namespace detail

inline SuiteResult verify_exact_identities(const VerifyTolerances& tol) {
    SuiteResult s{"exact_identities"};
    for (unsigned n = 4; n <= 6; ++n) {
        for (double p : detail::p_grid_05()) {
            const auto r = enumerate(n, p);
            s.near(detail::label("decomposition", n, p), (r.e_tau - 1.0) / (n - 1.0), r.term_a - r.term_b, tol.exact);
            s.near(detail::label("term_a_closed_form", n, p), r.term_a, term_a_closed_form(n, p), tol.exact);
            s.near(detail::label("term_b_component_form", n, p), r.term_b_component, r.term_b, tol.exact);
        }
    }
    for (std::uint64_t m = 2; m <= 20; ++m) {
        for (double p : detail::p_grid_05()) {
            const auto c = inverse_moment_check(m, p);
            s.near(detail::label("inverse_binomial_identity", static_cast<double>(m), p), c.lhs, c.rhs, tol.exact);
            const auto pmf = binomial_pmf(m, p);
            double direct = 0.0;
            for (std::uint64_t k = 0; k <= m; ++k) direct += pmf[k] / static_cast<double>(k + 1);
            s.near(detail::label("inv_one_plus_binomial", static_cast<double>(m), p), inv_one_plus_binomial(m, p),
                   direct, tol.exact);
        }
    }
    return s;
}

inline SuiteResult verify_analytic(const VerifyTolerances& tol) {
    SuiteResult s{"analytic"};
    std::vector<double> grid{0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i < 100; ++i) grid.push_back(1.01 + (10.0 - 1.01) * i / 99.0);
    for (double l : grid) {
        const double eta = extinction_prob(l);
        s.near(detail::label("fixed_point", l, 0), eta, std::exp(-l * (1.0 - eta)), tol.fixed_point);
        s.near(detail::label("r_series_vs_integral", l, 0), r_lambda(l, RMethod::series),
               r_lambda(l, RMethod::integral), tol.series_integral);
        if (l <= 1.0) {
            s.holds(detail::label("f_zero_subcritical", l, 0), f_limit(l) == 0.0, f_limit(l), 0.0);
        } else {
            const double lower = (1.0 - eta) * l * l * r_lambda(l);
            s.holds(detail::label("f_lower_bound", l, 0), f_limit(l) >= lower && lower > 0.0, f_limit(l), lower);
        }
    }
    return s;
}

inline SuiteResult verify_disconnect_bounds(const VerifyTolerances& tol) {
    SuiteResult s{"disconnect_bounds"};
    for (unsigned n = 4; n <= 6; ++n) {
        for (double p : detail::p_grid_05()) {
            const double exact = enumerate(n, p).p_2_notin_c1;
            const auto b = disconnect_prob_bounds(n, p);
            s.at_most(detail::label("lower", n, p), b.lower, exact, tol.exact);
            s.at_most(detail::label("upper", n, p), exact, b.upper, tol.exact);
        }
    }
    return s;
}

inline SuiteResult verify_oracle_vs_mc(const VerifyTolerances& tol, std::uint64_t seed, std::uint64_t reps,
                                       unsigned threads) {
    SuiteResult s{"oracle_vs_monte_carlo"};
    for (unsigned n = 2; n <= 6; ++n) {
        for (double p : {0.1, 0.5, 0.9}) {
            const double exact = enumerate(n, p).e_tau;
            const auto mc = mc_expected_return(n, p, reps, seed, threads);
            s.near(detail::label("mc_expected_return", n, p), mc.mean, exact, tol.mc_se * mc.std_error);
        }
    }
    s.near("exact_E_tau(2,0.5)", enumerate(2, 0.5).e_tau, 1.5, tol.exact);
    s.near("exact_E_tau(3,0.5)", enumerate(3, 0.5).e_tau, 2.375, tol.exact);
    return s;
}

inline SuiteResult verify_walk(const VerifyTolerances& tol, std::uint64_t seed, std::uint64_t walks) {
    SuiteResult s{"walk_vs_exact"};
    for (double p : {0.08, 0.3}) {
        auto rng = make_rng(seed, stream::tau_moments, static_cast<std::uint64_t>(p * 1000));
        const Graph g = sample_er(30, p, rng);
        std::vector<double> taus;
        taus.reserve(walks);
        for (std::uint64_t i = 0; i < walks; ++i) taus.push_back(static_cast<double>(simulate_return(g, rng).tau));
        const auto est = summarize(taus);
        s.near(detail::label("simulated_return", 30, p), est.mean, exact_expected_return(g),
               tol.mc_se * std::max(est.std_error, 1e-300));
    }
    // joint (graph, walk) moments against the linear-system oracle
    for (unsigned n = 3; n <= 5; ++n) {
        const auto r = enumerate(n, 0.5);
        const auto m = estimate_tau_moments(n, 0.5, walks / 10, 10, seed);
        s.near(detail::label("joint_E_tau", n, 0.5), m.e_tau, r.e_tau, tol.mc_se * m.se_tau);
        s.near(detail::label("joint_E_tau_sq", n, 0.5), m.e_tau_sq, r.e_tau_sq, tol.mc_se * m.se_tau_sq);
    }
    return s;
}

inline SuiteResult verify_occupation(const VerifyTolerances& tol, std::uint64_t seed) {
    SuiteResult s{"occupation"};
    const auto prior = Prior::parse("dense:0@0.5,1@0.5");
    const std::vector<std::size_t> target{1};
    const auto oracle_moments = [](double p) {
        const auto r = enumerate(2, p);
        return ReturnMoments{r.e_tau, r.e_tau_sq};
    };
    const auto s2 = sigma2_estimate(2, prior, target, oracle_moments);
    s.near("mu_limit(n=2)", s2.mu_limit, 2.0 / 3.0, tol.exact);
    s.near("sigma2(n=2)", s2.sigma2, 8.0 / 27.0, tol.exact);
    const std::uint64_t horizon = 100'000;
    auto rng = make_rng(seed, stream::state_process, 0);
    const auto run = run_state_process(2, prior, horizon, rng, {kDefaultStepsCap, false});
    s.near("empirical_mass(n=2,T=1e5)", run.histogram.mass_of(target), 2.0 / 3.0,
           tol.mc_se * std::sqrt(s2.sigma2 / static_cast<double>(horizon)));
    s.holds("time_accounting", run.trace.total_time == horizon, static_cast<double>(run.trace.total_time),
            static_cast<double>(horizon));
    return s;
}

inline SuiteResult verify_uniform_bound(const VerifyTolerances& tol, std::uint64_t seed, unsigned threads) {
    SuiteResult s{"uniform_return_bound"};
    for (unsigned n : {10u, 50u, 200u}) {
        for (double p : {0.02, 0.1, 0.3, 0.7}) {
            const auto mc = mc_expected_return(n, p, 500, seed, threads);
            s.at_most(detail::label("E_tau_over_n_minus_1", n, p), mc.mean / (n - 1.0), tol.uniform_c);
        }
    }
    return s;
}

/// Runs every suite. Keys read from `cfg`: seed (required), verify.mc_reps,
/// verify.walks, tol.exact, tol.series_integral, tol.fixed_point, tol.mc_se,
/// tol.uniform_c.
inline VerifyReport run_verify(const ExperimentConfig& cfg, unsigned threads = 1) {
    VerifyReport rep;
    rep.seed = cfg.seed();
    const auto tol = VerifyTolerances::from(cfg);
    const auto mc_reps = cfg.get_u64("verify.mc_reps", 4000);
    const auto walks = cfg.get_u64("verify.walks", 20000);
    if (mc_reps < 2 || walks < 20) throw ConfigError("verify.mc_reps must be >= 2 and verify.walks >= 20");
    rep.suites.push_back(verify_exact_identities(tol));
    rep.suites.push_back(verify_analytic(tol));
    rep.suites.push_back(verify_disconnect_bounds(tol));
    rep.suites.push_back(verify_oracle_vs_mc(tol, rep.seed, mc_reps, threads));
    rep.suites.push_back(verify_walk(tol, rep.seed, walks));
    rep.suites.push_back(verify_occupation(tol, rep.seed));
    rep.suites.push_back(verify_uniform_bound(tol, rep.seed, threads));
    return rep;
}

} // namespace ssrw
