// csv.hpp — locale-independent number formatting for CSV/JSON output.
#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace ssrw {

/// Shortest round-trip decimal form; '.' decimal point regardless of locale.
inline std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string join_doubles(const std::vector<double>& xs, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += fmt_double(xs[i]);
    }
    return out;
}

} // namespace ssrw
