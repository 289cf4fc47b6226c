// Parsing and output helpers for the command-line front end.
#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "telefid/core.hpp"
#include "telefid/distributions.hpp"

namespace telefid::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_plain(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) {
        throw UsageError("not a number: '" + s + "'");
    }
    return v;
}

// One factor: "pi", "2pi", "2.5", "1e-3".
inline double parse_factor(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        const std::string coeff = trim(s.substr(0, s.size() - 2));
        if (coeff.empty() || coeff == "+") {
            return pi;
        }
        if (coeff == "-") {
            return -pi;
        }
        return parse_plain(coeff) * pi;
    }
    return parse_plain(s);
}

}  // namespace detail

/// Real number with optional pi literals: "0.3", "pi", "pi/3", "2*pi/3", "3pi/4", "-pi/4".
inline double parse_real(std::string_view text) {
    std::string s = detail::trim(text);
    if (s.empty()) {
        throw UsageError("empty number");
    }
    double sign = 1.0;
    if (s[0] == '-' && s.find("pi") != std::string::npos) {
        sign = -1.0;
        s = detail::trim(s.substr(1));
    }
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    double value = 1.0;
    std::size_t start = 0;
    while (true) {
        const auto star = num.find('*', start);
        value *= detail::parse_factor(num.substr(start, star == std::string::npos ? std::string::npos : star - start));
        if (star == std::string::npos) {
            break;
        }
        start = star + 1;
    }
    if (slash != std::string::npos) {
        const double den = detail::parse_factor(s.substr(slash + 1));
        if (den == 0.0) {
            throw UsageError("division by zero in '" + std::string(text) + "'");
        }
        value /= den;
    }
    return sign * value;
}

/// Comma-separated list of reals.
inline std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_real(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

/// "start:stop:points", endpoints included; one point gives {start}.
inline std::vector<double> parse_grid(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
        throw UsageError("grid must be start:stop:points, got '" + std::string(text) + "'");
    }
    const double lo = parse_real(text.substr(0, c1));
    const double hi = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string count = detail::trim(text.substr(c2 + 1));
    long n = 0;
    try {
        std::size_t used = 0;
        n = std::stol(count, &used);
        if (used != count.size()) {
            n = 0;
        }
    } catch (const std::exception&) {
        n = 0;
    }
    if (n < 1) {
        throw UsageError("grid needs a positive integer point count, got '" + count + "'");
    }
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) {
        grid.back() = hi;
    }
    return grid;
}

enum class DistKind { Uniform, Cap, Vmf };

inline DistKind parse_dist_kind(std::string_view s) {
    if (s == "uniform") {
        return DistKind::Uniform;
    }
    if (s == "cap") {
        return DistKind::Cap;
    }
    if (s == "vmf") {
        return DistKind::Vmf;
    }
    throw UsageError("unknown distribution '" + std::string(s) + "' (expected uniform, cap or vmf)");
}

inline InputDistribution make_distribution(DistKind kind, double param) {
    try {
        switch (kind) {
            case DistKind::Uniform:
                return Uniform{};
            case DistKind::Cap:
                return PolarCap(param);
            case DistKind::Vmf:
                return VonMisesFisher(param);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown distribution");
}

/// "%.12g" formatting used for every CSV float.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace telefid::cli
