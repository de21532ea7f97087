// experiments.hpp — the limit experiments behind the command-line tool.
//
// Every experiment has a plain computational entry point returning rows and a
// CSV writer. Writers emit the config echo comment first, then the header.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "ssrw/branching.hpp"
#include "ssrw/config.hpp"
#include "ssrw/csv.hpp"
#include "ssrw/er_graph.hpp"
#include "ssrw/exact_oracle.hpp"
#include "ssrw/parallel.hpp"
#include "ssrw/prior.hpp"
#include "ssrw/ssrw_process.hpp"
#include "ssrw/stats.hpp"
#include "ssrw/walk.hpp"

namespace ssrw {

// ---------------------------------------------------------------- dense / sparse

struct ReturnRateRow {
    Vertex n;
    double theta;  // p (dense) or lambda (sparse)
    std::uint64_t reps;
    double mean;   // E[tau] estimate
    double se;
    double ratio;     // mean/(n-1) (dense) or mean/n (sparse)
    double ratio_se;
};

inline std::vector<ReturnRateRow> dense_convergence(const std::vector<std::uint64_t>& ns, const std::vector<double>& ps,
                                                    std::uint64_t reps, std::uint64_t seed, unsigned threads = 1) {
    std::vector<ReturnRateRow> rows;
    for (auto n : ns) {
        for (double p : ps) {
            const auto est = mc_expected_return(static_cast<Vertex>(n), p, reps, seed, threads);
            const double scale = static_cast<double>(n) - 1.0;
            rows.push_back({static_cast<Vertex>(n), p, reps, est.mean, est.std_error, est.mean / scale,
                            est.std_error / scale});
        }
    }
    return rows;
}

inline std::vector<ReturnRateRow> sparse_convergence(const std::vector<std::uint64_t>& ns,
                                                     const std::vector<double>& lambdas, std::uint64_t reps,
                                                     std::uint64_t seed, unsigned threads = 1) {
    std::vector<ReturnRateRow> rows;
    for (auto n : ns) {
        for (double l : lambdas) {
            const double nd = static_cast<double>(n);
            if (l / nd > 1.0) throw std::domain_error("lambda / n exceeds 1");
            const auto est = mc_expected_return(static_cast<Vertex>(n), l / nd, reps, seed, threads);
            rows.push_back({static_cast<Vertex>(n), l, reps, est.mean, est.std_error, est.mean / nd, est.std_error / nd});
        }
    }
    return rows;
}

inline void write_dense_csv(std::ostream& os, const std::string& echo, const std::vector<ReturnRateRow>& rows) {
    os << echo << '\n' << "n,p,reps,mean_tau,se_tau,ratio,ratio_se\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt_double(r.theta) << ',' << r.reps << ',' << fmt_double(r.mean) << ','
           << fmt_double(r.se) << ',' << fmt_double(r.ratio) << ',' << fmt_double(r.ratio_se) << '\n';
}

inline void write_sparse_csv(std::ostream& os, const std::string& echo, const std::vector<ReturnRateRow>& rows) {
    os << echo << '\n' << "n,lambda,reps,mean_tau_over_n,se_over_n,f,return_time_limit\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt_double(r.theta) << ',' << r.reps << ',' << fmt_double(r.ratio) << ','
           << fmt_double(r.ratio_se) << ',' << fmt_double(f_limit(r.theta)) << ','
           << fmt_double(return_time_limit(r.theta)) << '\n';
}

// ---------------------------------------------------------------- occupation

struct OccupationReport {
    Vertex n = 0;
    Mode mode = Mode::dense;
    std::uint64_t horizon = 0;
    std::vector<double> thetas, weights;
    std::vector<double> empirical;     // mu_{n,T}
    std::vector<double> plugin;        // mu_{n,inf} with estimated E[tau]
    std::vector<double> tau_mean;      // E_{n,g_n(theta)}[tau] per atom
    std::vector<double> limit_f;       // n -> inf: f-weighted (sparse) or the prior (dense)
    std::vector<double> limit_return;  // n -> inf: return_time_limit-weighted (sparse) or the prior
    bool limit_degenerate = false;
    std::uint64_t switches = 0;
    std::uint64_t censored = 0;
};

/// E_{n,p}[tau]: exact enumeration for n <= 6, graph-level Monte Carlo otherwise.
inline TauMeanFn default_tau_mean(Vertex n, std::uint64_t reps, std::uint64_t seed, unsigned threads) {
    if (n <= kOracleMaxN && n >= 2) return [n](double p) { return enumerate(n, p).e_tau; };
    return [=](double p) { return mc_expected_return(n, p, reps, seed, threads).mean; };
}

inline TauMomentsFn default_tau_moments(Vertex n, std::uint64_t reps_graphs, std::uint64_t walks_per_graph,
                                        std::uint64_t seed, std::uint64_t steps_cap, unsigned threads) {
    if (n <= kOracleMaxN && n >= 2)
        return [n](double p) {
            const auto r = enumerate(n, p);
            return ReturnMoments{r.e_tau, r.e_tau_sq};
        };
    return [=](double p) {
        const auto m = estimate_tau_moments(n, p, reps_graphs, walks_per_graph, seed, steps_cap, threads);
        return ReturnMoments{m.e_tau, m.e_tau_sq};
    };
}

inline OccupationReport occupation_experiment(Vertex n, const Prior& prior, std::uint64_t horizon, std::uint64_t seed,
                                              std::uint64_t plugin_reps, unsigned threads = 1,
                                              std::uint64_t steps_cap = kDefaultStepsCap) {
    OccupationReport rep;
    rep.n = n;
    rep.mode = prior.mode();
    rep.horizon = horizon;
    rep.thetas = prior.thetas();
    rep.weights = prior.weights();
    auto rng = make_rng(seed, stream::state_process, 0);
    const auto run = run_state_process(n, prior, horizon, rng, {steps_cap, false});
    rep.empirical = run.histogram.mass;
    rep.switches = run.trace.switch_count;
    rep.censored = run.trace.censored_count;

    const auto tau_mean = default_tau_mean(n, plugin_reps, seed, threads);
    for (std::size_t i = 0; i < prior.size(); ++i) rep.tau_mean.push_back(tau_mean(prior.edge_probability_of(i, n)));
    double total = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        rep.plugin.push_back(rep.weights[i] * rep.tau_mean[i]);
        total += rep.plugin.back();
    }
    for (double& m : rep.plugin) m /= total;

    if (prior.mode() == Mode::dense) {
        rep.limit_f = rep.weights;
        rep.limit_return = rep.weights;
    } else {
        try {
            rep.limit_f = weighted_masses(rep.thetas, rep.weights, f_limit);
            rep.limit_return = weighted_masses(rep.thetas, rep.weights, return_time_limit);
        } catch (const DegeneratePrior&) {
            rep.limit_degenerate = true;
            rep.limit_f.assign(prior.size(), std::numeric_limits<double>::quiet_NaN());
            rep.limit_return = rep.limit_f;
        }
    }
    return rep;
}

inline void write_occupation_csv(std::ostream& os, const std::string& echo, const OccupationReport& r) {
    os << echo << '\n'
       << "theta_or_bin,prior_weight,empirical_mass,plugin_mass,mean_tau,limit_mass_f,limit_mass_return\n";
    for (std::size_t i = 0; i < r.thetas.size(); ++i)
        os << fmt_double(r.thetas[i]) << ',' << fmt_double(r.weights[i]) << ',' << fmt_double(r.empirical[i]) << ','
           << fmt_double(r.plugin[i]) << ',' << fmt_double(r.tau_mean[i]) << ',' << fmt_double(r.limit_f[i]) << ','
           << fmt_double(r.limit_return[i]) << '\n';
    os << "# horizon=" << r.horizon << " switches=" << r.switches << " censored=" << r.censored << '\n';
}

// ---------------------------------------------------------------- structure of G(n, lambda/n)

struct StructureSample {
    std::uint32_t cmax = 0;
    std::uint32_t c1 = 0;
    std::uint32_t d1 = 0;
    bool in_max = false;
    bool two_in_c1 = false;
};

inline std::vector<StructureSample> structure_samples(Vertex n, double p, std::uint64_t reps, std::uint64_t seed,
                                                      unsigned threads = 1) {
    return parallel_map(reps, threads, [&](std::size_t i) {
        auto rng = make_rng(seed, stream::structure, i);
        const Graph g = sample_er(n, p, rng);
        const auto cs = components(g);
        const auto s1 = component_stats_of_1(g, cs);
        return StructureSample{cs.max_size(), s1.size, s1.degree, s1.in_max,
                               n >= 2 && cs.component_of(1) == cs.component_of(2)};
    });
}

struct ConcentrationRow {
    Vertex n;
    double lambda;
    std::uint64_t reps;
    double mean_cmax_over_n;
    double se_cmax_over_n;
    double zeta;
    double nu;
    double window_fraction;   // fraction with ||C_max| - zeta n| < n^nu
    double tail_a;
    double tail_threshold;    // A n^{2/3}
    double tail_fraction;     // fraction with |C(1)| >= A n^{2/3}
    double tail_bound;        // 4 exp(-A^2(A-4)/32) n^{-1/3}
};

inline ConcentrationRow concentration(Vertex n, double lambda, std::uint64_t reps, std::uint64_t seed, double nu,
                                      double tail_a, unsigned threads = 1) {
    const double nd = n;
    const auto samples = structure_samples(n, lambda / nd, reps, seed, threads);
    const double zeta = survival_prob(lambda);
    std::vector<double> frac;
    std::uint64_t inside = 0, tail = 0;
    const double window = std::pow(nd, nu);
    const double threshold = tail_a * std::pow(nd, 2.0 / 3.0);
    for (const auto& s : samples) {
        frac.push_back(s.cmax / nd);
        if (std::abs(s.cmax - zeta * nd) < window) ++inside;
        if (s.c1 >= threshold) ++tail;
    }
    const auto m = summarize(frac);
    const double r = static_cast<double>(reps);
    return {n, lambda, reps, m.mean, m.std_error, zeta, nu, inside / r, tail_a, threshold, tail / r,
            critical_tail_bound(nd, tail_a)};
}

inline void write_concentration_csv(std::ostream& os, const std::string& echo, const std::vector<ConcentrationRow>& rows) {
    os << echo << '\n'
       << "n,lambda,reps,mean_cmax_over_n,se_cmax_over_n,zeta,nu,window_fraction,A,tail_threshold,tail_fraction,"
          "tail_bound\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt_double(r.lambda) << ',' << r.reps << ',' << fmt_double(r.mean_cmax_over_n) << ','
           << fmt_double(r.se_cmax_over_n) << ',' << fmt_double(r.zeta) << ',' << fmt_double(r.nu) << ','
           << fmt_double(r.window_fraction) << ',' << fmt_double(r.tail_a) << ',' << fmt_double(r.tail_threshold)
           << ',' << fmt_double(r.tail_fraction) << ',' << fmt_double(r.tail_bound) << '\n';
}

struct ConditionalRow {
    std::uint64_t m;
    std::uint64_t hits;
    double p_hat;  // P(1 not in C_max | d(1) = m)
    double se;
    double eta_pow_m;
};

inline std::vector<ConditionalRow> conditional_giant(Vertex n, double lambda, const std::vector<std::uint64_t>& ms,
                                                     std::uint64_t reps, std::uint64_t seed, unsigned threads = 1) {
    const auto samples = structure_samples(n, lambda / static_cast<double>(n), reps, seed, threads);
    const double eta = extinction_prob(lambda);
    std::vector<ConditionalRow> rows;
    for (auto m : ms) {
        std::uint64_t hits = 0, outside = 0;
        for (const auto& s : samples) {
            if (s.d1 != m) continue;
            ++hits;
            if (!s.in_max) ++outside;
        }
        const double p_hat = hits ? static_cast<double>(outside) / static_cast<double>(hits)
                                  : std::numeric_limits<double>::quiet_NaN();
        const double se = hits ? std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(hits))
                               : std::numeric_limits<double>::quiet_NaN();
        rows.push_back({m, hits, p_hat, se, std::pow(eta, static_cast<double>(m))});
    }
    return rows;
}

inline void write_conditional_csv(std::ostream& os, const std::string& echo, const std::vector<ConditionalRow>& rows) {
    os << echo << '\n' << "m,hits,p_not_in_max,se,eta_pow_m\n";
    for (const auto& r : rows)
        os << r.m << ',' << r.hits << ',' << fmt_double(r.p_hat) << ',' << fmt_double(r.se) << ','
           << fmt_double(r.eta_pow_m) << '\n';
}

struct MomentRow {
    unsigned k;
    double e_c1_k;            // E|C(1)|^k
    double e_c1_k_scaled;     // n^{-k} E|C(1)|^k
    double zeta_pow;          // zeta^{k+1}
    double e_invd_c1_scaled;  // n^{-k} E[(1{d>=1}/d(1)) |C(1)|^k]
    double invd_limit;        // zeta^k lambda (R - eta^2 R_{lambda eta})
    double subcritical_bound; // sum (m+1)^k e^{-m I}, NaN unless lambda < 1
};

struct MomentsReport {
    Vertex n;
    double lambda;
    std::uint64_t reps;
    std::vector<MomentRow> rows;
    double p_2_in_c1;      // direct indicator estimate
    double p_2_in_c1_id;   // (E|C(1)| - 1)/(n - 1)
};

inline MomentsReport component_moments(Vertex n, double lambda, const std::vector<std::uint64_t>& ks, std::uint64_t reps,
                                       std::uint64_t seed, unsigned threads = 1) {
    const double nd = n;
    const auto samples = structure_samples(n, lambda / nd, reps, seed, threads);
    MomentsReport rep{n, lambda, reps, {}, 0.0, 0.0};
    const double r = static_cast<double>(reps);
    double e_c1 = 0.0;
    for (const auto& s : samples) {
        e_c1 += s.c1;
        rep.p_2_in_c1 += s.two_in_c1 ? 1.0 : 0.0;
    }
    rep.p_2_in_c1 /= r;
    rep.p_2_in_c1_id = (e_c1 / r - 1.0) / (nd - 1.0);
    for (auto k64 : ks) {
        const auto k = static_cast<unsigned>(k64);
        double raw = 0.0, scaled = 0.0, invd = 0.0;
        for (const auto& s : samples) {
            const double c = s.c1;
            raw += std::pow(c, k);
            const double sc = std::pow(c / nd, k);
            scaled += sc;
            if (s.d1 > 0) invd += sc / s.d1;
        }
        const double zeta = survival_prob(lambda);
        rep.rows.push_back({k, raw / r, scaled / r, std::pow(zeta, k + 1.0), invd / r,
                            inverse_degree_moment_limit(lambda, k),
                            lambda < 1.0 ? subcritical_moment_bound(lambda, k) : std::numeric_limits<double>::quiet_NaN()});
    }
    return rep;
}

inline void write_moments_csv(std::ostream& os, const std::string& echo, const MomentsReport& r) {
    os << echo << '\n'
       << "n,lambda,k,reps,E_C1_k,E_C1_k_over_nk,zeta_pow_k_plus_1,E_invd_C1_k_over_nk,invd_limit,"
          "subcritical_bound,p_2_in_C1,p_2_in_C1_identity,n_times_p_2_in_C1\n";
    for (const auto& m : r.rows)
        os << r.n << ',' << fmt_double(r.lambda) << ',' << m.k << ',' << r.reps << ',' << fmt_double(m.e_c1_k) << ','
           << fmt_double(m.e_c1_k_scaled) << ',' << fmt_double(m.zeta_pow) << ',' << fmt_double(m.e_invd_c1_scaled)
           << ',' << fmt_double(m.invd_limit) << ',' << fmt_double(m.subcritical_bound) << ','
           << fmt_double(r.p_2_in_c1) << ',' << fmt_double(r.p_2_in_c1_id) << ','
           << fmt_double(r.p_2_in_c1 * r.n) << '\n';
}

// ---------------------------------------------------------------- analytic / oracle / clt writers

inline void write_analytic_csv(std::ostream& os, const std::string& echo, const AnalyticCurve& curve) {
    if (!echo.empty()) os << echo << '\n';
    os << "lambda,eta,zeta,r_lambda,f\n";
    for (const auto& r : curve)
        os << fmt_double(r.lambda) << ',' << fmt_double(r.eta) << ',' << fmt_double(r.zeta) << ','
           << fmt_double(r.r_lambda) << ',' << fmt_double(r.f) << '\n';
}

inline void write_oracle_csv(std::ostream& os, const std::string& echo, const std::vector<OracleReport>& reports) {
    os << echo << '\n' << OracleReport::csv_header << '\n';
    for (const auto& r : reports) r.write_csv_row(os);
}

inline void write_clt_csv(std::ostream& os, const std::string& echo, const CltResult& r) {
    os << echo << '\n' << "replication,statistic\n";
    for (std::size_t i = 0; i < r.statistics.size(); ++i) os << i << ',' << fmt_double(r.statistics[i]) << '\n';
    os << "# summary: mu_limit=" << fmt_double(r.mu_limit) << " sigma2=" << fmt_double(r.sigma2)
       << " ks_distance=" << fmt_double(r.ks_distance)
       << " ks_critical_0.001=" << fmt_double(ks_critical_value(0.001, r.statistics.size()))
       << " mean=" << fmt_double(r.mean) << " variance=" << fmt_double(r.variance) << " censored=" << r.censored
       << '\n';
}

} // namespace ssrw
