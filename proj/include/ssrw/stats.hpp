// stats.hpp — small statistical helpers shared by experiments and tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ssrw {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Two-sided Kolmogorov–Smirnov distance between the sample's empirical CDF
/// and the standard normal CDF.
inline double ks_distance_normal(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const auto count = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = normal_cdf(sample[i]);
        const double above = (static_cast<double>(i) + 1.0) / count - cdf;
        const double below = cdf - static_cast<double>(i) / count;
        d = std::max({d, above, below});
    }
    return d;
}

/// Asymptotic one-sample KS critical value sqrt(-log(alpha/2)/2)/sqrt(N).
inline double ks_critical_value(double alpha, std::size_t count) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(count));
}

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

inline SampleMoments sample_moments(const std::vector<double>& x) {
    SampleMoments m;
    if (x.empty()) return m;
    for (double v : x) m.mean += v;
    m.mean /= static_cast<double>(x.size());
    if (x.size() > 1) {
        for (double v : x) m.variance += (v - m.mean) * (v - m.mean);
        m.variance /= static_cast<double>(x.size() - 1);
    }
    return m;
}

} // namespace ssrw
