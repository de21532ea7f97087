// ssrw_process.hpp — the self-switching state process and its occupation measure.
//
// Each excursion draws theta from the prior, samples G(n, g_n(theta)) and walks
// from vertex 1 until the first return; the state process holds theta for the
// tau steps of that excursion.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ssrw/csv.hpp"
#include "ssrw/er_graph.hpp"
#include "ssrw/parallel.hpp"
#include "ssrw/prior.hpp"
#include "ssrw/rng.hpp"
#include "ssrw/stats.hpp"
#include "ssrw/walk.hpp"

namespace ssrw {

struct Excursion {
    std::size_t atom;
    double theta;
    std::uint64_t tau;
    bool censored;
};

struct StateTrace {
    std::vector<Excursion> excursions;  // empty unless recording was requested
    std::uint64_t total_time = 0;       // completed taus plus the partial overlap
    std::uint64_t switch_count = 0;     // excursions finished within the horizon
    std::uint64_t partial_steps = 0;    // overlap of the last, unfinished excursion
    std::uint64_t censored_count = 0;

    void write_csv(std::ostream& os) const {
        os << "excursion_index,theta,tau\n";
        for (std::size_t i = 0; i < excursions.size(); ++i)
            os << i + 1 << ',' << fmt_double(excursions[i].theta) << ',' << excursions[i].tau << '\n';
    }
};

struct OccupationHistogram {
    std::vector<double> thetas;
    std::vector<std::uint64_t> time;  // steps spent on each atom
    std::vector<double> mass;
    std::uint64_t total_time = 0;

    double mass_of(const std::vector<std::size_t>& atoms) const {
        double m = 0.0;
        for (auto i : atoms) m += mass[i];
        return m;
    }

    void write_csv(std::ostream& os) const {
        os << "theta_or_bin,mass\n";
        for (std::size_t i = 0; i < mass.size(); ++i)
            os << fmt_double(thetas[i]) << ',' << fmt_double(mass[i]) << '\n';
    }
};

struct StateProcessOptions {
    std::uint64_t steps_cap = kDefaultStepsCap;
    bool record_excursions = true;
};

struct StateProcessResult {
    StateTrace trace;
    OccupationHistogram histogram;
};

/// Runs excursions until the cumulative time reaches `horizon`. The last
/// excursion is simulated to completion but contributes only its overlap with
/// [1, horizon].
inline StateProcessResult run_state_process(Vertex n, const Prior& prior, std::uint64_t horizon, Rng& rng,
                                            const StateProcessOptions& options = {}) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    prior.check_for(n);
    StateProcessResult out;
    auto& trace = out.trace;
    auto& hist = out.histogram;
    hist.thetas = prior.thetas();
    hist.time.assign(prior.size(), 0);

    std::uint64_t elapsed = 0;
    while (elapsed < horizon) {
        const std::size_t atom = prior.sample(rng);
        const double p = prior.edge_probability_of(atom, n);
        const Graph g = sample_er(n, p, rng);
        const auto r = simulate_return(g, rng, options.steps_cap);
        const std::uint64_t remaining = horizon - elapsed;
        const std::uint64_t used = std::min(r.tau, remaining);
        hist.time[atom] += used;
        elapsed += used;
        if (r.tau <= remaining)
            ++trace.switch_count;
        else
            trace.partial_steps = used;
        if (r.censored) ++trace.censored_count;
        if (options.record_excursions) trace.excursions.push_back({atom, prior[atom].theta, r.tau, r.censored});
    }
    trace.total_time = elapsed;
    hist.total_time = elapsed;
    hist.mass.resize(prior.size());
    for (std::size_t i = 0; i < prior.size(); ++i)
        hist.mass[i] = static_cast<double>(hist.time[i]) / static_cast<double>(elapsed);
    return out;
}

/// E_{n,p}[tau] and E_{n,p}[tau^2] for one edge probability.
struct ReturnMoments {
    double e_tau = 1.0;
    double e_tau_sq = 1.0;
};

using TauMeanFn = std::function<double(double p)>;
using TauMomentsFn = std::function<ReturnMoments(double p)>;

/// Occupation limit as T -> infinity for fixed n: prior masses reweighted by
/// E_{n,g_n(theta)}[tau]. Returns one mass per atom.
inline std::vector<double> occupation_limit_estimate(Vertex n, const Prior& prior, const TauMeanFn& tau_mean) {
    prior.check_for(n);
    std::vector<double> mass(prior.size());
    double total = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        mass[i] = prior[i].weight * tau_mean(prior.edge_probability_of(i, n));
        total += mass[i];
    }
    for (double& m : mass) m /= total;
    return mass;
}

inline double mass_of(const std::vector<double>& mass, const std::vector<std::size_t>& atoms) {
    double m = 0.0;
    for (auto i : atoms) m += mass[i];
    return m;
}

struct Sigma2Result {
    double mu_limit;  // occupation limit of the target set
    double sigma2;
};

/// Asymptotic variance of sqrt(T)(mu_T(A) - mu_inf(A)):
///   sum_i w_i (1_A(theta_i) - mu_inf(A))^2 E_i[tau^2] / sum_i w_i E_i[tau].
inline Sigma2Result sigma2_estimate(Vertex n, const Prior& prior, const std::vector<std::size_t>& target,
                                    const TauMomentsFn& moments) {
    prior.check_for(n);
    std::vector<ReturnMoments> per_atom;
    per_atom.reserve(prior.size());
    double denom = 0.0, in_target = 0.0;
    std::vector<char> is_target(prior.size(), 0);
    for (auto i : target) is_target.at(i) = 1;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        per_atom.push_back(moments(prior.edge_probability_of(i, n)));
        denom += prior[i].weight * per_atom.back().e_tau;
        if (is_target[i]) in_target += prior[i].weight * per_atom.back().e_tau;
    }
    const double mu = in_target / denom;
    double num = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        const double centered = (is_target[i] ? 1.0 : 0.0) - mu;
        num += prior[i].weight * centered * centered * per_atom[i].e_tau_sq;
    }
    return {mu, num / denom};
}

class DegenerateClt : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CltResult {
    std::vector<double> statistics;  // sqrt(T)(mu_T(A) - mu_inf(A)) / sigma
    double mu_limit = 0.0;
    double sigma2 = 0.0;
    double ks_distance = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t censored = 0;
};

/// Independent state-process replications, standardized with the plug-in
/// variance from `moments`. Replication i draws from derive_seed(seed, tag, i).
inline CltResult clt_experiment(Vertex n, const Prior& prior, const std::vector<std::size_t>& target,
                                std::uint64_t horizon, std::uint64_t replications, std::uint64_t seed,
                                const TauMomentsFn& moments, unsigned threads = 1,
                                std::uint64_t steps_cap = kDefaultStepsCap) {
    if (replications < 100) throw std::invalid_argument("CLT experiment needs at least 100 replications");
    const auto s2 = sigma2_estimate(n, prior, target, moments);
    if (!(s2.sigma2 > 0.0)) throw DegenerateClt("target set has zero asymptotic variance");
    const double scale = std::sqrt(static_cast<double>(horizon) / s2.sigma2);
    struct Rep {
        double stat;
        std::uint64_t censored;
    };
    const auto reps = parallel_map(replications, threads, [&](std::size_t i) {
        auto rng = make_rng(seed, stream::state_process, i);
        const auto run = run_state_process(n, prior, horizon, rng, {steps_cap, false});
        return Rep{scale * (run.histogram.mass_of(target) - s2.mu_limit), run.trace.censored_count};
    });
    CltResult out;
    out.mu_limit = s2.mu_limit;
    out.sigma2 = s2.sigma2;
    for (const auto& r : reps) {
        out.statistics.push_back(r.stat);
        out.censored += r.censored;
    }
    out.ks_distance = ks_distance_normal(out.statistics);
    const auto m = sample_moments(out.statistics);
    out.mean = m.mean;
    out.variance = m.variance;
    return out;
}

} // namespace ssrw
