#include "aqecc/reporting.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "aqecc/errors.hpp"

namespace aqecc {

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value)
{
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf.data(), 16);
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        throw FormatError("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw DataError("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2)
        throw InsufficientDataError("fit_line: need at least two points");

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw InsufficientDataError("fit_line: all x values coincide");

    LineFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.rms_residual = std::sqrt(ss_res / static_cast<double>(n));
    // A flat line fits flat data perfectly.
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

LineFit fit_power_law(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 3)
        throw InsufficientDataError("fit_power_law: need at least three points");
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto& [n, v] : points) {
        if (!(n > 0.0) || !(v > 0.0))
            throw DataError("fit_power_law: sizes and values must be positive");
        lx.push_back(std::log(n));
        ly.push_back(std::log(v));
    }
    return fit_line(lx, ly);
}

namespace {

int parse_int(std::string_view s, std::string_view whole)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError("bad grid '" + std::string(whole) + "'");
    return v;
}

} // namespace

std::vector<int> parse_grid(std::string_view text)
{
    std::vector<int> grid;
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || c2 + 2 > text.size())
            throw FormatError("grid must look like lo:hi:x2 or lo:hi:+s, got '" + std::string(text) + "'");
        const int lo = parse_int(text.substr(0, c1), text);
        const int hi = parse_int(text.substr(c1 + 1, c2 - c1 - 1), text);
        const char kind = text[c2 + 1];
        const int step = parse_int(text.substr(c2 + 2), text);
        if (lo < 1 || hi < lo)
            throw FormatError("grid bounds must satisfy 1 <= lo <= hi");
        if (kind == 'x') {
            if (step < 2)
                throw FormatError("geometric grid factor must be >= 2");
            for (long v = lo; v <= hi; v *= step)
                grid.push_back(static_cast<int>(v));
        } else if (kind == '+') {
            if (step < 1)
                throw FormatError("arithmetic grid step must be >= 1");
            for (long v = lo; v <= hi; v += step)
                grid.push_back(static_cast<int>(v));
        } else {
            throw FormatError("grid step must start with 'x' or '+'");
        }
        return grid;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        grid.push_back(parse_int(piece, text));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return grid;
}

} // namespace aqecc
