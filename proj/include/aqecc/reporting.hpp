#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aqecc {

inline constexpr std::string_view kSchemaVersion = "aqecc/1";

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least squares on (log N, log value); needs >= 3 points with positive
// values. Constant data gives r_squared = 1.
LineFit fit_power_law(std::span<const std::pair<double, double>> points);

// "lo:hi:x2" doubles from lo while <= hi; "lo:hi:+s" steps by s;
// "a,b,c" is an explicit list; a single integer is a one-point grid.
std::vector<int> parse_grid(std::string_view text);

} // namespace aqecc
