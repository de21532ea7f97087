// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ssrw/experiments.hpp"
#include "ssrw/verify.hpp"

using namespace ssrw;

namespace {

constexpr std::uint64_t kSeed = 20240611;

// criterion 1-3 time budgets (seconds)
constexpr double kExactBudget = 10.0;
constexpr double kAnalyticBudget = 5.0;
constexpr double kOracleMcBudget = 60.0;
constexpr std::uint64_t kOracleMcReps = 4000;

// criterion 4
constexpr Vertex kDenseN = 500;
constexpr std::uint64_t kDenseReps = 10000;
constexpr double kDenseTol = 0.02;

// criterion 5
constexpr Vertex kSparseN = 8000;
constexpr std::uint64_t kSparseReps = 2000;
constexpr double kSparseRelTol = 0.10;
constexpr double kSubcriticalMax = 0.05;

// criterion 6
constexpr std::uint64_t kOccupationT = 10'000'000;
constexpr double kSparseMassMin = 0.95;
constexpr double kDenseMassTol = 0.02;

// criterion 7
constexpr std::uint64_t kCltReps = 500;
constexpr std::uint64_t kCltT = 100'000;
constexpr double kKsBand = 0.087;

// criterion 8
constexpr double kGiantTol = 0.02;
constexpr double kConditionalTol = 0.03;
constexpr double kMomentTol = 0.03;
constexpr double kNu = 0.75;
constexpr double kTailA = 9.0;

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("criterion %d [%s] %s: %s\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
}

void info(const std::string& title, const std::string& detail) {
    std::printf("info        %s: %s\n", title.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string num(double x) { return fmt_double(x); }

std::string suite_detail(const SuiteResult& s, double secs, double budget) {
    std::string d = std::to_string(s.checks) + " checks, " + std::to_string(s.failures.size()) +
                    " failed, worst error/tolerance " + num(s.worst) + ", " + num(std::round(secs * 100) / 100) +
                    " s (budget " + num(budget) + " s)";
    if (!s.failures.empty())
        d += "; first failure " + s.failures.front().check + " observed " + num(s.failures.front().observed) +
             " expected " + num(s.failures.front().expected);
    return d;
}

void criterion1() {
    Clock c;
    const auto s = verify_exact_identities(VerifyTolerances{});
    const double t = c.seconds();
    report(1, s.passed() && t < kExactBudget, "exact identities", suite_detail(s, t, kExactBudget));
}

void criterion2() {
    Clock c;
    const auto s = verify_analytic(VerifyTolerances{});
    const double t = c.seconds();
    report(2, s.passed() && t < kAnalyticBudget, "analytic suite", suite_detail(s, t, kAnalyticBudget));
}

void criterion3() {
    Clock c;
    const auto s = verify_oracle_vs_mc(VerifyTolerances{}, kSeed, kOracleMcReps, 1);
    const double t = c.seconds();
    report(3, s.passed() && t < kOracleMcBudget, "oracle vs Monte Carlo", suite_detail(s, t, kOracleMcBudget));
}

void criterion4() {
    Clock c;
    const auto rows = dense_convergence({kDenseN}, {0.3, 0.7}, kDenseReps, kSeed);
    const auto full = dense_convergence({kDenseN}, {1.0}, 10, kSeed);
    const double exact = static_cast<double>(kDenseN) / (kDenseN - 1.0);
    bool ok = full[0].ratio == exact;
    std::string d;
    for (const auto& r : rows) {
        ok = ok && std::abs(r.ratio - 1.0) <= kDenseTol;
        d += "p=" + num(r.theta) + " ratio " + num(r.ratio) + " (se " + num(r.ratio_se) + "); ";
    }
    d += "p=1 ratio " + num(full[0].ratio) + (full[0].ratio == exact ? " == " : " != ") + "n/(n-1); " +
         num(std::round(c.seconds())) + " s";
    report(4, ok && c.seconds() < 300, "dense limit", d);
}

void criterion5() {
    Clock c;
    const double f2 = f_limit(2.0);
    const auto main = sparse_convergence({kSparseN}, {2.0}, kSparseReps, kSeed);
    const auto sub = sparse_convergence({kSparseN}, {0.5}, kSparseReps, kSeed);
    const auto trend = sparse_convergence({500, 2000, kSparseN}, {2.0}, kSparseReps, kSeed);
    const double rel = std::abs(main[0].ratio / f2 - 1.0);
    const bool within = rel <= kSparseRelTol;
    const bool subcritical = sub[0].ratio <= kSubcriticalMax;
    std::vector<double> gaps;
    for (const auto& r : trend) gaps.push_back(std::abs(r.ratio - f2));
    const bool decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
    const bool ok = within && subcritical && decreasing && c.seconds() < 900;
    report(5, ok, "sparse limit",
           "n^-1 E[tau] at n=8000, lambda=2: " + num(main[0].ratio) + " (se " + num(main[0].ratio_se) + ") vs f(2) " +
               num(f2) + ", relative gap " + num(rel) + (within ? " <= " : " > ") + "0.1; lambda=0.5: " +
               num(sub[0].ratio) + (subcritical ? " <= " : " > ") + "0.05; gaps at n=500,2000,8000: " + num(gaps[0]) +
               ", " + num(gaps[1]) + ", " + num(gaps[2]) + (decreasing ? " (decreasing)" : " (not decreasing)") +
               "; " + num(std::round(c.seconds())) + " s");
    const double rtl = return_time_limit(2.0);
    info("sparse limit vs return_time_limit",
         "lambda^2 zeta (1+eta)(R - eta^2 R_{lambda eta}) = " + num(rtl) + "; estimates at n=500,2000,8000: " +
             num(trend[0].ratio) + ", " + num(trend[1].ratio) + ", " + num(trend[2].ratio) +
             "; relative gap at n=8000 " + num(std::abs(main[0].ratio / rtl - 1.0)));
}

void criterion6() {
    Clock c;
    const auto sparse = occupation_experiment(4000, Prior::parse("sparse:0.5,2"), kOccupationT, kSeed, 200);
    const auto dense = occupation_experiment(kDenseN, Prior::parse("dense:0.3,0.7"), kOccupationT, kSeed, 200);
    const bool sparse_ok = sparse.empirical[1] >= kSparseMassMin;
    const bool dense_ok =
        std::abs(dense.empirical[0] - 0.5) <= kDenseMassTol && std::abs(dense.empirical[1] - 0.5) <= kDenseMassTol;
    report(6, sparse_ok && dense_ok, "occupation measures",
           "sparse {0.5,2} n=4000: mass on 2 = " + num(sparse.empirical[1]) + " (min 0.95); dense {0.3,0.7} n=500: " +
               num(dense.empirical[0]) + ", " + num(dense.empirical[1]) + " (target 0.5 +- 0.02); " +
               num(std::round(c.seconds())) + " s");
}

void criterion7() {
    Clock c;
    const auto prior = Prior::parse("dense:0@0.5,1@0.5");
    const std::vector<std::size_t> target{1};
    const TauMomentsFn exact = [](double p) {
        const auto r = enumerate(2, p);
        return ReturnMoments{r.e_tau, r.e_tau_sq};
    };
    const auto s2 = sigma2_estimate(2, prior, target, exact);
    const bool limits = std::abs(s2.mu_limit - 2.0 / 3.0) <= 1e-12 && std::abs(s2.sigma2 - 8.0 / 27.0) <= 1e-12;
    const auto r = clt_experiment(2, prior, target, kCltT, kCltReps, kSeed, exact);
    const bool ks = r.ks_distance <= kKsBand;
    report(7, limits && ks && c.seconds() < 600, "CLT",
           "mu_inf " + num(s2.mu_limit) + ", sigma^2 " + num(s2.sigma2) + "; KS distance " + num(r.ks_distance) +
               " (band 0.087), sample mean " + num(r.mean) + ", variance " + num(r.variance) + "; " +
               num(std::round(c.seconds())) + " s");
}

void criterion8() {
    Clock c;
    std::string d;
    bool ok = true;

    const auto tail = concentration(2000, 1.0, 10000, kSeed, kNu, kTailA);
    const bool tail_ok = tail.tail_fraction <= tail.tail_bound;
    ok = ok && tail_ok;
    d += "tail n=2000 A=9: " + num(tail.tail_fraction) + " <= " + num(tail.tail_bound) + (tail_ok ? "" : " VIOLATED");

    std::vector<ConcentrationRow> conc;
    for (Vertex n : {2000u, 5000u, 10000u}) conc.push_back(concentration(n, 2.0, 500, kSeed, kNu, kTailA));
    const double zeta = survival_prob(2.0);
    const bool giant_ok = std::abs(conc[1].mean_cmax_over_n - zeta) <= kGiantTol && conc[1].window_fraction >= 0.95;
    const bool monotone = 1.0 - conc[0].window_fraction >= 1.0 - conc[1].window_fraction &&
                          1.0 - conc[1].window_fraction >= 1.0 - conc[2].window_fraction;
    ok = ok && giant_ok && monotone;
    d += "; |C_max|/n at n=5000: " + num(conc[1].mean_cmax_over_n) + " vs zeta " + num(zeta) +
         ", window fraction " + num(conc[1].window_fraction) + "; failure fractions n=2000,5000,10000: " +
         num(1.0 - conc[0].window_fraction) + ", " + num(1.0 - conc[1].window_fraction) + ", " +
         num(1.0 - conc[2].window_fraction) + (monotone ? " (non-increasing)" : " (increasing)");

    const auto cond = conditional_giant(5000, 2.0, {1, 2}, 2000, kSeed);
    for (const auto& r : cond) {
        const bool row_ok = r.hits >= 200 && std::abs(r.p_hat - r.eta_pow_m) <= kConditionalTol;
        ok = ok && row_ok;
        d += "; m=" + std::to_string(r.m) + ": " + num(r.p_hat) + " vs " + num(r.eta_pow_m) + " (" +
             std::to_string(r.hits) + " hits)";
    }

    const auto sub = component_moments(2000, 0.5, {1}, 1000, kSeed);
    const bool sub_ok = sub.rows[0].e_c1_k <= sub.rows[0].subcritical_bound;
    ok = ok && sub_ok;
    d += "; subcritical E|C(1)| " + num(sub.rows[0].e_c1_k) + " <= " + num(sub.rows[0].subcritical_bound);

    const auto sup = component_moments(8000, 2.0, {1}, 2000, kSeed);
    const auto& m = sup.rows[0];
    const bool mom_ok = std::abs(m.e_c1_k_scaled - m.zeta_pow) <= kMomentTol &&
                        std::abs(m.e_invd_c1_scaled - m.invd_limit) <= kMomentTol;
    ok = ok && mom_ok;
    d += "; n=8000: E|C(1)|/n " + num(m.e_c1_k_scaled) + " vs " + num(m.zeta_pow) + ", E[|C(1)|/(n d(1))] " +
         num(m.e_invd_c1_scaled) + " vs " + num(m.invd_limit) + "; " + num(std::round(c.seconds())) + " s";
    report(8, ok && c.seconds() < 600, "concentration and conditioning", d);
}

void criterion9() {
    ExperimentConfig cfg;
    cfg.set("seed", std::to_string(kSeed));
    const auto a = run_verify(cfg);
    const auto b = run_verify(cfg);
    const auto ja = a.to_json().dump(2), jb = b.to_json().dump(2);
    report(9, ja == jb, "determinism",
           std::string(ja == jb ? "byte-identical" : "DIFFERENT") + " reports (" + std::to_string(ja.size()) +
               " bytes), verify " + (a.passed() ? "passed" : "failed"));
}

} // namespace

int main() {
    Clock total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("acceptance: %d of 9 criteria failed (%s s)\n", failures, num(std::round(total.seconds())).c_str());
    return failures == 0 ? 0 : 1;
}
