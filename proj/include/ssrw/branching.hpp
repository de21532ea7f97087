// branching.hpp — Poisson branching process quantities, binomial inverse
// moments and the closed forms that describe E_{n,p}[tau] and its limits.
//
// All functions are pure.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ssrw {

namespace detail {
inline void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("branching parameter must be positive, got " + std::to_string(lambda));
}
} // namespace detail

/// Extinction probability of a Poisson(lambda) Galton–Watson tree: the
/// smallest root of eta = exp(-lambda (1 - eta)) in [0, 1].
inline double extinction_prob(double lambda) {
    detail::check_lambda(lambda);
    if (lambda <= 1.0) return 1.0;
    auto h = [lambda](double x) { return std::exp(-lambda * (1.0 - x)) - x; };
    // h(0) > 0 and h < 0 just below 1; shrink delta until the sign flips.
    double delta = 0.5;
    while (h(1.0 - delta) >= 0.0) {
        delta *= 0.5;
        if (delta < 1e-15) return 1.0;
    }
    double lo = 0.0, hi = 1.0 - delta;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    return std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
}

inline double survival_prob(double lambda) { return 1.0 - extinction_prob(lambda); }

enum class RMethod { series, integral };

/// R_lambda = E[(1 + Poi(lambda))^{-2}].
inline double r_lambda(double lambda, RMethod method = RMethod::series) {
    detail::check_lambda(lambda);
    if (method == RMethod::series) {
        // term_k = e^{-lambda} lambda^k / k! / (k+1)^2
        double pois = std::exp(-lambda);
        double sum = pois;
        for (std::uint64_t k = 1;; ++k) {
            pois *= lambda / static_cast<double>(k);
            const double kk = static_cast<double>(k + 1);
            const double term = pois / (kk * kk);
            sum += term;
            if (static_cast<double>(k) > lambda && term < 1e-16 * sum) break;
            if (k > 100000) break;
        }
        return sum;
    }
    // (e^{-lambda}/lambda) * int_0^lambda (e^s - 1)/s ds; integrand is 1 at s = 0.
    auto integrand = [](double s) { return s == 0.0 ? 1.0 : std::expm1(s) / s; };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, lambda, 15, 1e-13);
    return std::exp(-lambda) / lambda * integral;
}

/// Closed form printed for lim n^{-1} E_{n,lambda/n}[tau]:
///   f(lambda) = lambda^2 zeta (R + eta (1 + eta) (R - eta^2 R_{lambda eta})).
/// Zero for lambda <= 1.
inline double f_limit(double lambda) {
    detail::check_lambda(lambda);
    if (lambda <= 1.0) return 0.0;
    const double eta = extinction_prob(lambda);
    const double zeta = 1.0 - eta;
    const double r = r_lambda(lambda);
    const double gap = r - eta * eta * r_lambda(lambda * eta);
    return lambda * lambda * zeta * (r + eta * (1.0 + eta) * gap);
}

/// lim n^{-1} E_{n,lambda/n}[tau], derived from the giant component's degree
/// sum lambda n (1 - eta^2) and E[1{1 in giant}/d(1)] -> lambda (R - eta^2 R_{lambda eta}):
///   lambda^2 zeta (1 + eta) (R - eta^2 R_{lambda eta}).
/// Simulation converges to this value. f_limit exceeds it by
/// lambda^2 zeta (R - zeta (1 + eta)(R - eta^2 R_{lambda eta})), which is the
/// disconnected-pair term scaled by zeta; f_limit weights that term by eta
/// instead of 1.
inline double return_time_limit(double lambda) {
    detail::check_lambda(lambda);
    if (lambda <= 1.0) return 0.0;
    const double eta = extinction_prob(lambda);
    const double zeta = 1.0 - eta;
    const double gap = r_lambda(lambda) - eta * eta * r_lambda(lambda * eta);
    return lambda * lambda * zeta * (1.0 + eta) * gap;
}

struct AnalyticRow {
    double lambda, eta, zeta, r_lambda, f;
};

using AnalyticCurve = std::vector<AnalyticRow>;

inline AnalyticCurve analytic_curve(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty lambda grid");
    AnalyticCurve curve;
    curve.reserve(grid.size());
    for (double l : grid) {
        const double eta = extinction_prob(l);
        curve.push_back({l, eta, 1.0 - eta, r_lambda(l), f_limit(l)});
    }
    return curve;
}

class DegeneratePrior : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Normalized masses proportional to weight_i * density(theta_i). Throws
/// DegeneratePrior when every weighted density vanishes.
inline std::vector<double> weighted_masses(const std::vector<double>& thetas,
                                           const std::vector<double>& weights,
                                           const std::function<double(double)>& density) {
    std::vector<double> mass(thetas.size());
    double total = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        mass[i] = weights[i] > 0.0 ? weights[i] * density(thetas[i]) : 0.0;
        total += mass[i];
    }
    if (!(total > 0.0))
        throw DegeneratePrior("degenerate prior: no mass on parameters with positive limit density");
    for (double& m : mass) m /= total;
    return mass;
}

/// Binomial(m, p) pmf for k = 0..m, built outward from the mode by the
/// multiplicative recursion so nothing underflows before it matters, then
/// renormalized.
inline std::vector<double> binomial_pmf(std::uint64_t m, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
    std::vector<double> pmf(m + 1, 0.0);
    if (p == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p == 1.0) {
        pmf[m] = 1.0;
        return pmf;
    }
    const double md = static_cast<double>(m);
    const auto mode = std::min<std::uint64_t>(m, static_cast<std::uint64_t>(std::floor((md + 1.0) * p)));
    const double ratio = p / (1.0 - p);
    pmf[mode] = 1.0;
    for (std::uint64_t k = mode; k < m; ++k)  // pmf[k+1]/pmf[k] = (m-k)/(k+1) * p/q
        pmf[k + 1] = pmf[k] * (md - static_cast<double>(k)) / static_cast<double>(k + 1) * ratio;
    for (std::uint64_t k = mode; k > 0; --k)
        pmf[k - 1] = pmf[k] * static_cast<double>(k) / (md - static_cast<double>(k) + 1.0) / ratio;
    double total = 0.0;
    for (double v : pmf) total += v;
    for (double& v : pmf) v /= total;
    return pmf;
}

/// E[1/(1 + Bin(m, p))] = (1 - (1-p)^{m+1}) / ((m+1) p); 1 at p = 0.
inline double inv_one_plus_binomial(std::uint64_t m, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
    if (p == 0.0) return 1.0;
    const double m1 = static_cast<double>(m) + 1.0;
    const double one_minus_q_pow = p == 1.0 ? 1.0 : -std::expm1(m1 * std::log1p(-p));
    return one_minus_q_pow / (m1 * p);
}

/// E[1/(1 + Bin(m, p))^2] by summation over the pmf.
inline double inv_sq_one_plus_binomial(std::uint64_t m, double p) {
    const auto pmf = binomial_pmf(m, p);
    double sum = 0.0;
    for (std::uint64_t k = m + 1; k-- > 0;) {
        const double d = static_cast<double>(k) + 1.0;
        sum += pmf[k] / (d * d);
    }
    return sum;
}

struct IdentityCheck {
    double lhs;
    double rhs;
    double residual() const { return std::abs(lhs - rhs); }
};

/// E[1{B_m >= 1}/B_m] (direct sum) against m p E[(1 + B_{m-1})^{-2}].
inline IdentityCheck inverse_moment_check(std::uint64_t m, double p) {
    if (m < 2) throw std::domain_error("identity needs m >= 2");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("identity needs 0 < p < 1");
    const auto pmf = binomial_pmf(m, p);
    double lhs = 0.0;
    for (std::uint64_t k = m; k >= 1; --k) lhs += pmf[k] / static_cast<double>(k);
    return {lhs, static_cast<double>(m) * p * inv_sq_one_plus_binomial(m - 1, p)};
}

/// E_{n,p}[d(2) 1{d(1)>=1}/d(1)] in closed form:
///   (n-2)^2 p^2 (1-p) E[(1+B_{n-3})^{-2}] + (1 + (n-2)p)(1 - (1-p)^{n-1})/(n-1).
inline double term_a_closed_form(std::uint64_t n, double p) {
    if (n < 4) throw std::domain_error("closed form needs n >= 4");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("closed form needs 0 < p < 1");
    const double nd = static_cast<double>(n);
    const double first = (nd - 2.0) * (nd - 2.0) * p * p * (1.0 - p) * inv_sq_one_plus_binomial(n - 3, p);
    const double second = (1.0 + (nd - 2.0) * p) * -std::expm1((nd - 1.0) * std::log1p(-p)) / (nd - 1.0);
    return first + second;
}

struct ProbabilityBounds {
    double lower;
    double upper;
};

/// Bounds on P_{n,p}(2 not in C(1)) with q = 1 - p:
///   (2 - q^{n-2}) q^{n-1} <= P <= 2 q^{n-1} (1 + q^{(n-2)/2})^{n-2}.
inline ProbabilityBounds disconnect_prob_bounds(std::uint64_t n, double p) {
    if (n < 3) throw std::domain_error("bounds need n >= 3");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bounds need 0 < p < 1");
    const double q = 1.0 - p;
    const double nd = static_cast<double>(n);
    const double lower = (2.0 - std::pow(q, nd - 2.0)) * std::pow(q, nd - 1.0);
    const double upper = 2.0 * std::pow(q, nd - 1.0) * std::pow(1.0 + std::pow(q, (nd - 2.0) / 2.0), nd - 2.0);
    return {lower, upper};
}

/// Rate function of the subcritical cluster tail, I = lambda - 1 - log(lambda).
inline double subcritical_rate(double lambda) {
    detail::check_lambda(lambda);
    return lambda - 1.0 - std::log(lambda);
}

/// sum_{m>=0} (m+1)^k e^{-m I_lambda}, the uniform bound on E|C(1)|^k for lambda < 1.
inline double subcritical_moment_bound(double lambda, unsigned k) {
    if (!(lambda < 1.0)) throw std::domain_error("subcritical bound needs lambda < 1");
    const double rate = subcritical_rate(lambda);
    double sum = 0.0;
    for (std::uint64_t m = 0;; ++m) {
        const double md = static_cast<double>(m);
        const double term = std::pow(md + 1.0, k) * std::exp(-md * rate);
        sum += term;
        if (md * rate > static_cast<double>(k) && term < 1e-17 * sum) break;
    }
    return sum;
}

/// Limit of n^{-k} E[(1{d(1)>=1}/d(1)) |C(1)|^k] for lambda > 1:
/// zeta^k lambda (R_lambda - eta^2 R_{lambda eta}).
inline double inverse_degree_moment_limit(double lambda, unsigned k) {
    detail::check_lambda(lambda);
    if (lambda <= 1.0) return 0.0;
    const double eta = extinction_prob(lambda);
    const double gap = r_lambda(lambda) - eta * eta * r_lambda(lambda * eta);
    return std::pow(1.0 - eta, k) * lambda * gap;
}

/// Tail bound at criticality: P(|C(1)| >= A n^{2/3}) <= 4 exp(-A^2 (A-4)/32) n^{-1/3}.
inline double critical_tail_bound(double n, double a) {
    return 4.0 * std::exp(-a * a * (a - 4.0) / 32.0) * std::cbrt(1.0 / n);
}

} // namespace ssrw
