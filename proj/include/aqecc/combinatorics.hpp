#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace aqecc {

using BigInt = boost::multiprecision::cpp_int;

// Counts at or above 10^max_digits are carried in log space only.
struct CountOptions {
    int max_digits = 300;
};

// A non-negative integer count. `exact` is populated whenever the value fits
// the digit budget; `log_value` (natural log, -inf for zero) always is.
struct SectorCount {
    std::optional<BigInt> exact;
    double log_value = 0.0;

    bool is_zero() const;
    static SectorCount zero();
    static SectorCount from_exact(BigInt value);
};

// C(n, k); zero outside 0 <= k <= n.
SectorCount binomial(std::int64_t n, std::int64_t k, const CountOptions& options = {});

// Number of spin-1/2 strings of length N with magnetization m: C(N, N/2 + m/2).
SectorCount heisenberg_sector_count(int N, int m, const CountOptions& options = {});

// Number of strings in {-1,0,1}^L summing to i, by the flat-step expansion
//   |g^L_i| = sum_f C(L-f, (L-f+i)/2) C(L, f).
SectorCount motzkin_sector_count(int L, int i, const CountOptions& options = {});

// log of 3^{L+1/2} / (2 sqrt(pi L)) exp(-3 i^2 / 4L). Meaningful for |i| = O(sqrt L).
double motzkin_sector_count_asymptotic(int L, int i);

// log of 2^{a+1} / sqrt(2 pi a) exp(-b^2 / 2a), the Gaussian form of C(a, a/2 + b/2).
double gaussian_binomial_approx(int a, int b);

// Log-space kernels in extended precision. Both return -inf for empty counts.
long double log_binomial(std::int64_t n, std::int64_t k);
long double log_motzkin_count(int L, int i);

// Exact C(n, k) with no digit budget; zero outside the valid range.
BigInt exact_binomial(std::int64_t n, std::int64_t k);

// num / den rounded to double, for den > 0. Accurate far beyond double range
// of either operand.
double ratio_to_double(const BigInt& num, const BigInt& den);
long double log_of(const BigInt& value);

} // namespace aqecc
