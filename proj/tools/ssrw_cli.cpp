// ssrw — command-line driver for the self-switching random walk experiments.
//
//   ssrw <command> [--config PATH] [--seed U64] [--out PATH] [--threads N]
//                  [--grid SPEC] [--set key=value ...]
//
// Exit status: 0 success, 1 verification failure, 2 configuration error,
// 3 anything else.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssrw/experiments.hpp"
#include "ssrw/verify.hpp"

namespace {

using namespace ssrw;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw ConfigError("cannot open output file '" + path + "'");
        os = &file;
    }
};

void require_at_least(const std::string& key, std::uint64_t value, std::uint64_t min) {
    if (value < min) throw ConfigError(key + " must be >= " + std::to_string(min));
}

Vertex vertex_count(const ExperimentConfig& cfg, const std::string& key = "n") {
    const auto n = cfg.get_u64(key);
    if (n < 1 || n > 0xFFFFFFFFull) throw ConfigError(key + " must be a positive 32-bit vertex count");
    return static_cast<Vertex>(n);
}

int run_analytic(const ExperimentConfig& cfg, std::ostream& os) {
    write_analytic_csv(os, cfg.echo(), analytic_curve(cfg.get_grid("grid")));
    return 0;
}

int run_dense(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto ns = cfg.get_u64_list("n");
    const auto ps = cfg.get_grid("grid");
    const auto reps = cfg.get_u64("reps");
    require_at_least("reps", reps, 1000);
    const auto seed = cfg.seed();
    write_dense_csv(os, cfg.echo(), dense_convergence(ns, ps, reps, seed, threads));
    return 0;
}

int run_sparse(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto ns = cfg.get_u64_list("n");
    const auto lambdas = cfg.get_grid("grid");
    const auto reps = cfg.get_u64("reps");
    require_at_least("reps", reps, 1000);
    const auto seed = cfg.seed();
    write_sparse_csv(os, cfg.echo(), sparse_convergence(ns, lambdas, reps, seed, threads));
    return 0;
}

int run_occupation(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto n = vertex_count(cfg);
    const auto prior = cfg.prior();
    prior.check_for(n);
    const auto horizon = cfg.get_u64("T");
    require_at_least("T", horizon, 1);
    const auto plugin_reps = cfg.get_u64("plugin_reps", 2000);
    const auto steps_cap = cfg.get_u64("steps_cap", kDefaultStepsCap);
    const auto seed = cfg.seed();
    write_occupation_csv(os, cfg.echo(), occupation_experiment(n, prior, horizon, seed, plugin_reps, threads, steps_cap));
    return 0;
}

int run_clt(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto n = vertex_count(cfg);
    const auto prior = cfg.prior();
    prior.check_for(n);
    const auto target = prior.indices_of(cfg.get_grid("target"));
    const auto horizon = cfg.get_u64("T");
    const auto reps = cfg.get_u64("reps");
    require_at_least("reps", reps, 100);
    const auto steps_cap = cfg.get_u64("steps_cap", kDefaultStepsCap);
    const auto seed = cfg.seed();
    const auto moments = default_tau_moments(n, cfg.get_u64("moment_graphs", 2000), cfg.get_u64("moment_walks", 5),
                                             seed, steps_cap, threads);
    write_clt_csv(os, cfg.echo(), clt_experiment(n, prior, target, horizon, reps, seed, moments, threads, steps_cap));
    return 0;
}

int run_concentration(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto ns = cfg.get_u64_list("n");
    const double lambda = cfg.get_double("lambda");
    const auto reps = cfg.get_u64("reps");
    require_at_least("reps", reps, 500);
    const double nu = cfg.get_double("nu", 0.75);
    const double a = cfg.get_double("A", 9.0);
    const auto seed = cfg.seed();
    std::vector<ConcentrationRow> rows;
    for (auto n : ns) rows.push_back(concentration(static_cast<Vertex>(n), lambda, reps, seed, nu, a, threads));
    write_concentration_csv(os, cfg.echo(), rows);
    return 0;
}

int run_conditional(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto n = vertex_count(cfg);
    const double lambda = cfg.get_double("lambda");
    if (!(lambda > 1.0)) throw ConfigError("conditional-giant needs lambda > 1");
    const auto ms = cfg.get_u64_list("m", "1,2,3");
    const auto reps = cfg.get_u64("reps");
    const auto seed = cfg.seed();
    const auto rows = conditional_giant(n, lambda, ms, reps, seed, threads);
    for (const auto& r : rows)
        if (r.hits < 200) std::cerr << "warning: only " << r.hits << " samples with d(1) = " << r.m << '\n';
    write_conditional_csv(os, cfg.echo(), rows);
    return 0;
}

int run_moments(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto n = vertex_count(cfg);
    const double lambda = cfg.get_double("lambda");
    const auto ks = cfg.get_u64_list("k", "1");
    const auto reps = cfg.get_u64("reps");
    require_at_least("reps", reps, 1000);
    const auto seed = cfg.seed();
    write_moments_csv(os, cfg.echo(), component_moments(n, lambda, ks, reps, seed, threads));
    return 0;
}

int run_oracle(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto ns = cfg.get_u64_list("n");
    const auto ps = cfg.get_grid("grid");
    const bool slow = cfg.get_u64("oracle.slow", 0) != 0;
    std::vector<OracleReport> reports;
    for (auto n : ns)
        for (double p : ps) reports.push_back(enumerate(static_cast<unsigned>(n), p, slow, threads));
    write_oracle_csv(os, cfg.echo(), reports);
    return 0;
}

int run_verify(const ExperimentConfig& cfg, unsigned threads, std::ostream& os) {
    const auto report = ssrw::run_verify(cfg, threads);
    os << report.to_json().dump(2) << '\n';
    for (const auto& s : report.suites)
        for (const auto& f : s.failures)
            std::cerr << "FAIL " << s.name << ": " << f.check << " observed=" << fmt_double(f.observed)
                      << " expected=" << fmt_double(f.expected) << " tolerance=" << fmt_double(f.tolerance) << '\n';
    return report.passed() ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-switching random walk on Erdos-Renyi graphs: experiments and checks"};
    app.require_subcommand(1);

    std::string config_path, out_path, grid;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--grid", grid, "parameter grid: comma list or lo:hi:count");
    app.add_option("--set", overrides, "override a config key (key=value)");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"analytic", "tabulate lambda, eta, zeta, R_lambda, f"},
        {"dense", "E[tau]/(n-1) for fixed p"},
        {"sparse", "E[tau]/n for p = lambda/n"},
        {"occupation", "empirical and limiting occupation measures"},
        {"clt", "standardized occupation fluctuations and KS distance"},
        {"concentration", "giant component concentration and critical tail"},
        {"conditional-giant", "P(1 not in C_max | d(1) = m) against eta^m"},
        {"moments", "moments of |C(1)|"},
        {"oracle", "exact enumeration for small n"},
        {"verify", "identity and property suite (JSON report)"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);
        if (seed) cfg.set("seed", std::to_string(*seed));
        if (app.count("--grid")) cfg.set("grid", grid);
        for (const auto& o : overrides) cfg.set_assignment(o);

        Output out(out_path);
        std::ostream& os = *out.os;
        if (command == "analytic") return run_analytic(cfg, os);
        if (command == "dense") return run_dense(cfg, threads, os);
        if (command == "sparse") return run_sparse(cfg, threads, os);
        if (command == "occupation") return run_occupation(cfg, threads, os);
        if (command == "clt") return run_clt(cfg, threads, os);
        if (command == "concentration") return run_concentration(cfg, threads, os);
        if (command == "conditional-giant") return run_conditional(cfg, threads, os);
        if (command == "moments") return run_moments(cfg, threads, os);
        if (command == "oracle") return run_oracle(cfg, threads, os);
        return run_verify(cfg, threads, os);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
