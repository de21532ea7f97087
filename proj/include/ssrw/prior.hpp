// prior.hpp — the a priori measure over edge parameters and the map g_n.
//
// Dense mode: theta is the edge probability itself. Sparse mode: theta is
// lambda and the edge probability is lambda / n. Continuous densities are
// discretized into midpoint bins, so every prior is a finite list of atoms.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssrw/er_graph.hpp"
#include "ssrw/rng.hpp"

namespace ssrw {

enum class Mode { dense, sparse };

inline constexpr std::size_t kMaxPriorBins = 10'000;

struct Atom {
    double theta;
    double weight;
};

class Prior {
public:
    /// Weights are normalized; they need only be nonnegative with positive sum.
    static Prior atoms(Mode mode, std::vector<Atom> atoms) {
        if (atoms.empty()) throw std::invalid_argument("prior needs at least one atom");
        double total = 0.0;
        for (const auto& a : atoms) {
            if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
                throw std::invalid_argument("prior weights must be nonnegative");
            if (mode == Mode::dense && !(a.theta >= 0.0 && a.theta <= 1.0))
                throw std::domain_error("dense prior atoms must lie in [0, 1]");
            if (mode == Mode::sparse && !(a.theta > 0.0 && std::isfinite(a.theta)))
                throw std::domain_error("sparse prior atoms must be positive");
            total += a.weight;
        }
        if (!(total > 0.0)) throw std::invalid_argument("prior weights sum to zero");
        Prior prior;
        prior.mode_ = mode;
        for (auto& a : atoms) a.weight /= total;
        prior.atoms_ = std::move(atoms);
        prior.build_cdf();
        return prior;
    }

    /// Midpoint discretization of `density` on [lo, hi] into `bins` cells.
    static Prior binned(Mode mode, double lo, double hi, std::size_t bins,
                        const std::function<double(double)>& density) {
        if (bins < 1 || bins > kMaxPriorBins) throw std::invalid_argument("bin count must be in [1, 10000]");
        if (!(hi > lo)) throw std::invalid_argument("empty prior interval");
        std::vector<Atom> atoms;
        atoms.reserve(bins);
        const double width = (hi - lo) / static_cast<double>(bins);
        for (std::size_t i = 0; i < bins; ++i) {
            const double mid = lo + (static_cast<double>(i) + 0.5) * width;
            atoms.push_back({mid, density(mid) * width});
        }
        Prior prior = Prior::atoms(mode, std::move(atoms));
        prior.bin_width_ = width;
        return prior;
    }

    /// Parses "<mode>:<theta>[@<weight>],..." or "<mode>:uniform:<lo>:<hi>:<bins>".
    /// Missing weights mean equal weights.
    static Prior parse(std::string_view spec);

    Mode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    bool is_binned() const noexcept { return bin_width_ > 0.0; }
    double bin_width() const noexcept { return bin_width_; }

    std::vector<double> thetas() const {
        std::vector<double> out;
        for (const auto& a : atoms_) out.push_back(a.theta);
        return out;
    }
    std::vector<double> weights() const {
        std::vector<double> out;
        for (const auto& a : atoms_) out.push_back(a.weight);
        return out;
    }

    /// g_n(theta): identity in dense mode, theta / n in sparse mode.
    double edge_probability(double theta, Vertex n) const {
        const double p = mode_ == Mode::dense ? theta : theta / static_cast<double>(n);
        if (p > 1.0) throw std::domain_error("lambda / n exceeds 1; increase n");
        return p;
    }
    double edge_probability_of(std::size_t atom, Vertex n) const {
        return edge_probability(atoms_[atom].theta, n);
    }

    void check_for(Vertex n) const {
        if (n < 1) throw std::domain_error("graph needs at least one vertex");
        for (const auto& a : atoms_) (void)edge_probability(a.theta, n);
    }

    /// Inverse-CDF draw of an atom index.
    std::size_t sample(Rng& rng) const {
        const double u = uniform01(rng);
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), atoms_.size() - 1);
    }

    /// Atom index of each requested theta (relative match 1e-12).
    std::vector<std::size_t> indices_of(const std::vector<double>& targets) const {
        std::vector<std::size_t> out;
        for (double t : targets) {
            bool found = false;
            for (std::size_t i = 0; i < atoms_.size(); ++i) {
                if (std::abs(atoms_[i].theta - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
                    out.push_back(i);
                    found = true;
                    break;
                }
            }
            if (!found) throw std::invalid_argument("target " + std::to_string(t) + " is not a prior atom");
        }
        return out;
    }

private:
    void build_cdf() {
        cdf_.clear();
        double acc = 0.0;
        for (const auto& a : atoms_) {
            acc += a.weight;
            cdf_.push_back(acc);
        }
        cdf_.back() = 1.0;
    }

    Mode mode_ = Mode::dense;
    std::vector<Atom> atoms_;
    std::vector<double> cdf_;
    double bin_width_ = 0.0;
};

namespace detail {

inline double parse_double(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return parts;
        start = pos + 1;
    }
}

} // namespace detail

inline Prior Prior::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("prior spec needs '<mode>:...'");
    const auto mode_name = spec.substr(0, colon);
    Mode mode;
    if (mode_name == "dense")
        mode = Mode::dense;
    else if (mode_name == "sparse")
        mode = Mode::sparse;
    else
        throw std::invalid_argument("prior mode must be dense or sparse");
    const auto body = spec.substr(colon + 1);
    if (body.starts_with("uniform:")) {
        const auto parts = detail::split(body.substr(8), ':');
        if (parts.size() != 3) throw std::invalid_argument("uniform prior needs lo:hi:bins");
        const double bins = detail::parse_double(parts[2]);
        if (bins < 1 || bins != std::floor(bins)) throw std::invalid_argument("bin count must be a positive integer");
        return binned(mode, detail::parse_double(parts[0]), detail::parse_double(parts[1]),
                      static_cast<std::size_t>(bins), [](double) { return 1.0; });
    }
    std::vector<Atom> list;
    for (auto item : detail::split(body, ',')) {
        const auto at = item.find('@');
        if (at == std::string_view::npos)
            list.push_back({detail::parse_double(item), 1.0});
        else
            list.push_back({detail::parse_double(item.substr(0, at)), detail::parse_double(item.substr(at + 1))});
    }
    return Prior::atoms(mode, std::move(list));
}

} // namespace ssrw
