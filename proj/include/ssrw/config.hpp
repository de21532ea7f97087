// config.hpp — flat key/value experiment configuration.
//
// File format: one "key = value" per line, '#' starts a comment. Later
// assignments (including command-line overrides) replace earlier ones.
//
// Grids are either comma lists ("0.5,1,2") or inclusive linear ranges
// "lo:hi:count". Keys starting with "tol." are tolerances and must be positive.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssrw/prior.hpp"

namespace ssrw {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExperimentConfig {
public:
    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        ExperimentConfig cfg;
        cfg.merge_text(buf.str());
        return cfg;
    }

    void merge_text(std::string_view text) {
        std::size_t line_no = 0;
        while (!text.empty()) {
            const auto eol = text.find('\n');
            auto line = text.substr(0, eol);
            text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
            set(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
        }
    }

    void set(const std::string& key, const std::string& value) {
        if (key.empty()) throw ConfigError("empty config key");
        if (key.starts_with("tol.")) {
            const double t = parse_number(key, value);
            if (!(t > 0.0)) throw ConfigError("tolerance '" + key + "' must be positive");
        }
        entries_[key] = value;
    }

    /// "key=value" override as given on the command line.
    void set_assignment(std::string_view assignment) {
        const auto eq = assignment.find('=');
        if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' needs key=value");
        set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, std::optional<std::string> fallback = {}) const {
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        if (fallback) return *fallback;
        throw ConfigError("missing config key '" + key + "'");
    }

    double get_double(const std::string& key, std::optional<double> fallback = {}) const {
        if (auto it = entries_.find(key); it != entries_.end()) return parse_number(key, it->second);
        if (fallback) return *fallback;
        throw ConfigError("missing config key '" + key + "'");
    }

    std::uint64_t get_u64(const std::string& key, std::optional<std::uint64_t> fallback = {}) const {
        if (auto it = entries_.find(key); it != entries_.end()) return to_count(key, parse_number(key, it->second));
        if (fallback) return *fallback;
        throw ConfigError("missing config key '" + key + "'");
    }

    std::vector<double> get_grid(const std::string& key, std::optional<std::string> fallback = {}) const {
        return parse_grid(key, get_string(key, std::move(fallback)));
    }

    std::vector<std::uint64_t> get_u64_list(const std::string& key, std::optional<std::string> fallback = {}) const {
        std::vector<std::uint64_t> out;
        for (double v : get_grid(key, std::move(fallback))) out.push_back(to_count(key, v));
        return out;
    }

    double tolerance(const std::string& name, double fallback) const {
        return get_double("tol." + name, fallback);
    }

    /// Seeds are never taken from the clock.
    std::uint64_t seed() const {
        if (!has("seed")) throw ConfigError("a seed is required (--seed or 'seed = ...')");
        const auto& s = entries_.at("seed");
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("seed must be an unsigned 64-bit integer");
        return v;
    }

    Prior prior(const std::string& key = "prior") const {
        try {
            return Prior::parse(get_string(key));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("bad prior '" + get_string(key) + "': " + e.what());
        }
    }

    /// Single comment line echoing every entry except output plumbing.
    std::string echo() const {
        std::string out = "# config:";
        for (const auto& [k, v] : entries_) {
            if (k == "out" || k == "threads" || k == "config") continue;
            out += ' ' + k + '=' + v + ';';
        }
        return out;
    }

    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

    static std::vector<double> parse_grid(const std::string& key, std::string_view spec) {
        spec = trim(spec);
        if (spec.empty()) throw ConfigError("grid '" + key + "' is empty");
        std::vector<double> out;
        if (spec.find(':') != std::string_view::npos) {
            const auto parts = detail::split(spec, ':');
            if (parts.size() != 3) throw ConfigError("range grid '" + key + "' must be lo:hi:count");
            const double lo = parse_number(key, parts[0]), hi = parse_number(key, parts[1]);
            const auto count = to_count(key, parse_number(key, parts[2]));
            if (count < 1) throw ConfigError("grid '" + key + "' is empty");
            for (std::uint64_t i = 0; i < count; ++i)
                out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
            return out;
        }
        for (auto item : detail::split(spec, ',')) out.push_back(parse_number(key, item));
        return out;
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    }

    static double parse_number(const std::string& key, std::string_view s) {
        try {
            return detail::parse_double(s);
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': '" + std::string(s) + "' is not a number");
        }
    }

    static std::uint64_t to_count(const std::string& key, double v) {
        if (!(v >= 0.0) || v != std::floor(v) || v > 0x1.0p63)
            throw ConfigError("config key '" + key + "' must be a nonnegative integer");
        return static_cast<std::uint64_t>(v);
    }

    std::map<std::string, std::string> entries_;
};

} // namespace ssrw
