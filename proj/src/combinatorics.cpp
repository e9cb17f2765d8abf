#include "aqecc/combinatorics.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <vector>

#include "aqecc/errors.hpp"

namespace aqecc {

namespace {

constexpr long double kLn10 = 2.302585092994045684017991454684364208L;

long double log_gamma(long double x)
{
    int sign = 0;
    return ::lgammal_r(x, &sign);
}

bool fits_budget(long double log_value, const CountOptions& options)
{
    return log_value / kLn10 < static_cast<long double>(options.max_digits);
}

SectorCount log_only(long double log_value)
{
    SectorCount c;
    c.log_value = static_cast<double>(log_value);
    return c;
}

} // namespace

bool SectorCount::is_zero() const
{
    return exact ? exact->is_zero() : std::isinf(log_value) && log_value < 0;
}

SectorCount SectorCount::zero()
{
    return from_exact(BigInt(0));
}

SectorCount SectorCount::from_exact(BigInt value)
{
    SectorCount c;
    c.log_value = static_cast<double>(log_of(value));
    c.exact = std::move(value);
    return c;
}

long double log_of(const BigInt& value)
{
    if (value.is_zero())
        return -std::numeric_limits<long double>::infinity();
    const auto top = static_cast<long>(boost::multiprecision::msb(value));
    if (top < 63)
        return std::log(value.convert_to<long double>());
    const long shift = top - 62;
    const BigInt mantissa = value >> shift;
    return std::log(mantissa.convert_to<long double>()) + shift * std::numbers::ln2_v<long double>;
}

double ratio_to_double(const BigInt& num, const BigInt& den)
{
    if (den <= 0)
        throw DomainError("ratio_to_double: non-positive denominator");
    if (num.is_zero())
        return 0.0;
    const auto num_bits = static_cast<long>(boost::multiprecision::msb(num));
    const auto den_bits = static_cast<long>(boost::multiprecision::msb(den));
    // Scale so the integer quotient carries ~64 significant bits.
    const long shift = 64 + den_bits - num_bits;
    BigInt q = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
    return static_cast<double>(std::ldexp(q.convert_to<long double>(), static_cast<int>(-shift)));
}

BigInt exact_binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0 || k > n)
        return BigInt(0);
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

long double log_binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0 || k > n)
        return -std::numeric_limits<long double>::infinity();
    if (k == 0 || k == n)
        return 0.0L;
    return log_gamma(static_cast<long double>(n) + 1) - log_gamma(static_cast<long double>(k) + 1)
        - log_gamma(static_cast<long double>(n - k) + 1);
}

SectorCount binomial(std::int64_t n, std::int64_t k, const CountOptions& options)
{
    const long double lv = log_binomial(n, k);
    if (std::isinf(lv))
        return SectorCount::zero();
    if (!fits_budget(lv, options))
        return log_only(lv);
    return SectorCount::from_exact(exact_binomial(n, k));
}

SectorCount heisenberg_sector_count(int N, int m, const CountOptions& options)
{
    if (N < 0)
        throw RangeError("heisenberg_sector_count: negative chain length");
    if (std::abs(m) > N)
        throw RangeError("heisenberg_sector_count: |m| > N");
    if ((N - m) % 2 != 0)
        throw ParityError("heisenberg_sector_count: m must have the parity of N");
    return binomial(N, (N + m) / 2, options);
}

long double log_motzkin_count(int L, int i)
{
    if (L < 0 || std::abs(i) > L)
        return -std::numeric_limits<long double>::infinity();

    std::vector<long double> terms;
    terms.reserve(static_cast<std::size_t>(L) + 1);
    for (int f = 0; f <= L - std::abs(i); ++f) {
        if ((L - f + i) % 2 != 0)
            continue;
        terms.push_back(log_binomial(L - f, (L - f + i) / 2) + log_binomial(L, f));
    }
    long double peak = -std::numeric_limits<long double>::infinity();
    for (long double t : terms)
        peak = std::max(peak, t);

    // Ascending f, Kahan-compensated.
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (long double t : terms) {
        const long double y = std::exp(t - peak) - carry;
        const long double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
    return peak + std::log(sum);
}

SectorCount motzkin_sector_count(int L, int i, const CountOptions& options)
{
    if (L < 0)
        throw RangeError("motzkin_sector_count: negative length");
    if (std::abs(i) > L)
        throw RangeError("motzkin_sector_count: |i| > L");

    const long double lv = log_motzkin_count(L, i);
    if (!fits_budget(lv, options))
        return log_only(lv);

    BigInt total = 0;
    BigInt choose_flat = 1; // C(L, f), advanced incrementally
    for (int f = 0; f <= L - std::abs(i); ++f) {
        if ((L - f + i) % 2 == 0)
            total += exact_binomial(L - f, (L - f + i) / 2) * choose_flat;
        choose_flat *= L - f;
        choose_flat /= f + 1;
    }
    return SectorCount::from_exact(std::move(total));
}

double motzkin_sector_count_asymptotic(int L, int i)
{
    const double l = L;
    const double x = i;
    return (l + 0.5) * std::log(3.0) - std::log(2.0) - 0.5 * std::log(std::numbers::pi * l)
        - 3.0 * x * x / (4.0 * l);
}

double gaussian_binomial_approx(int a, int b)
{
    const double n = a;
    const double x = b;
    return (n + 1.0) * std::log(2.0) - 0.5 * std::log(2.0 * std::numbers::pi * n) - x * x / (2.0 * n);
}

} // namespace aqecc
