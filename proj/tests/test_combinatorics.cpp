#include <doctest.h>

#include <cmath>

#include "aqecc/combinatorics.hpp"
#include "aqecc/errors.hpp"
#include "oracles.hpp"

using namespace aqecc;

namespace {

BigInt exact(const SectorCount& c)
{
    REQUIRE(c.exact.has_value());
    return *c.exact;
}

} // namespace

TEST_CASE("binomial small values and out-of-range convention")
{
    CHECK(exact(binomial(4, 2)) == 6);
    CHECK(exact(binomial(0, 0)) == 1);
    CHECK(binomial(4, 5).is_zero());
    CHECK(binomial(4, -1).is_zero());
    CHECK(std::isinf(binomial(4, 5).log_value));
    CHECK(exact(binomial(60, 30)) == BigInt("118264581564861424"));
}

TEST_CASE("heisenberg sector counts")
{
    CHECK(exact(heisenberg_sector_count(4, 0)) == 6);
    CHECK(exact(heisenberg_sector_count(4, 4)) == 1);
    CHECK(exact(heisenberg_sector_count(6, 2)) == oracle::count_strings(2, 6, 2));
    CHECK_THROWS_AS(heisenberg_sector_count(4, 1), ParityError);
    CHECK_THROWS_AS(heisenberg_sector_count(4, 6), RangeError);
}

TEST_CASE("motzkin sector counts against enumeration")
{
    CHECK(exact(motzkin_sector_count(1, 0)) == 1);
    CHECK(exact(motzkin_sector_count(4, 0)) == 19);
    CHECK(exact(motzkin_sector_count(4, 2)) == 10);
    for (int L = 1; L <= 8; ++L)
        for (int i = -L; i <= L; ++i)
            CHECK(exact(motzkin_sector_count(L, i)) == oracle::count_strings(3, L, i));
    CHECK_THROWS_AS(motzkin_sector_count(3, 4), RangeError);
}

TEST_CASE("asymptotic forms")
{
    const double L = 400.0;
    CHECK(motzkin_sector_count_asymptotic(400, 0)
          == doctest::Approx((L + 0.5) * std::log(3.0) - std::log(2.0) - 0.5 * std::log(M_PI * L)).epsilon(1e-14));
    const double exact_mot = motzkin_sector_count(400, 0).log_value;
    CHECK(std::abs(motzkin_sector_count_asymptotic(400, 0) - exact_mot) / exact_mot <= 1e-2);
    CHECK(motzkin_sector_count_asymptotic(100, 10) == motzkin_sector_count_asymptotic(100, -10));

    CHECK(gaussian_binomial_approx(400, 0)
          == doctest::Approx(401.0 * std::log(2.0) - 0.5 * std::log(2.0 * M_PI * 400.0)).epsilon(1e-14));
    const double exact_bin = binomial(400, 200).log_value;
    CHECK(std::abs(gaussian_binomial_approx(400, 0) - exact_bin) / exact_bin <= 1e-2);
    CHECK(gaussian_binomial_approx(50, 6) == gaussian_binomial_approx(50, -6));
}

TEST_CASE("convolution and Vandermonde identities hold exactly")
{
    for (int N = 2; N <= 30; N += 7)
        for (int d = 1; d < N; d += 3)
            for (int m = -N; m <= N; m += 5) {
                BigInt sum = 0;
                for (int r = -d; r <= d; ++r)
                    if (std::abs(m - r) <= N - d)
                        sum += exact(motzkin_sector_count(d, r)) * exact(motzkin_sector_count(N - d, m - r));
                CHECK(sum == exact(motzkin_sector_count(N, m)));
            }
    for (int N = 2; N <= 30; N += 4)
        for (int d = 1; d < N; d += 3)
            for (int m = -N; m <= N; m += 2) {
                BigInt sum = 0;
                for (int r = -d; r <= d; r += 2)
                    sum += exact(binomial(d, (d + r) / 2))
                        * exact(binomial(N - d, (N - d + m - r) / 2 >= 0 && (N - d + m - r) % 2 == 0
                                                    ? (N - d + m - r) / 2
                                                    : -1));
                CHECK(sum == exact(heisenberg_sector_count(N, m)));
            }
}

TEST_CASE("log value matches the exact integer")
{
    for (int L : {5, 40, 200, 600}) {
        const auto c = motzkin_sector_count(L, L / 7);
        REQUIRE(c.exact.has_value());
        const double from_exact = static_cast<double>(log_of(*c.exact));
        CHECK(std::abs(from_exact - c.log_value) <= 1e-12 * std::abs(c.log_value));
    }
    const auto b = binomial(1000, 333);
    CHECK(std::abs(static_cast<double>(log_of(*b.exact)) - b.log_value) <= 1e-12 * b.log_value);
}

TEST_CASE("digit budget switches to log space")
{
    const auto big = binomial(5000, 2500);
    CHECK_FALSE(big.exact.has_value());
    const double reference = std::lgamma(5001.0) - 2.0 * std::lgamma(2501.0);
    CHECK(big.log_value == doctest::Approx(reference).epsilon(1e-12));
    const auto wide = binomial(5000, 2500, CountOptions{2000});
    REQUIRE(wide.exact.has_value());
    CHECK(std::abs(static_cast<double>(log_of(*wide.exact)) - big.log_value) <= 1e-12 * big.log_value);
    const auto mot = motzkin_sector_count(3000, 10);
    CHECK_FALSE(mot.exact.has_value());
    const auto mot_exact = motzkin_sector_count(3000, 10, CountOptions{3000});
    REQUIRE(mot_exact.exact.has_value());
    CHECK(std::abs(static_cast<double>(log_of(*mot_exact.exact)) - mot.log_value) <= 1e-12 * mot.log_value);
}

TEST_CASE("ratio_to_double handles operands beyond double range")
{
    const BigInt huge = BigInt(1) << 5000;
    CHECK(ratio_to_double(huge * 3, huge * 4) == 0.75);
    CHECK(ratio_to_double(BigInt(1), BigInt(3)) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
}
