#include <doctest.h>

#include <cmath>
#include <limits>

#include "aqecc/errors.hpp"
#include "aqecc/reporting.hpp"
#include "aqecc/serialization.hpp"

using namespace aqecc;

TEST_CASE("hashing and number formatting")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.0) == "-2");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    const double x = 1.0 / 3.0;
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("power-law fits")
{
    std::vector<std::pair<double, double>> exact;
    for (double n : {16.0, 32.0, 64.0, 128.0})
        exact.emplace_back(n, 7.0 / n);
    const auto f = fit_power_law(exact);
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(7.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> flat{{10.0, 2.0}, {20.0, 2.0}, {40.0, 2.0}};
    const auto c = fit_power_law(flat);
    CHECK(c.slope == 0.0);
    CHECK(c.r_squared == 1.0);

    CHECK_THROWS_AS(fit_power_law(std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 2.0}}),
                    InsufficientDataError);
    CHECK_THROWS_AS(fit_power_law(std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 0.0}, {3.0, 1.0}}),
                    DataError);
}

TEST_CASE("grid parsing")
{
    CHECK(parse_grid("64:4096:x2") == std::vector<int>{64, 128, 256, 512, 1024, 2048, 4096});
    CHECK(parse_grid("10:20:+5") == std::vector<int>{10, 15, 20});
    CHECK(parse_grid("3,5,9") == std::vector<int>{3, 5, 9});
    CHECK(parse_grid("12") == std::vector<int>{12});
    CHECK_THROWS_AS(parse_grid("1:10:y2"), FormatError);
    CHECK_THROWS_AS(parse_grid("a,b"), FormatError);
    CHECK_THROWS_AS(parse_grid("10:1:x2"), FormatError);
}

TEST_CASE("json round trips")
{
    const auto h = build_hamiltonian(ModelName::MotzkinPBC, 4);
    const auto back = hamiltonian_from_json(hamiltonian_to_json(h));
    CHECK(back.N == 4);
    CHECK(back.site_dim == 3);
    REQUIRE(back.terms.size() == 1);
    CHECK((back.terms[0].matrix - h.terms[0].matrix).norm() == 0.0);

    const json nested = json::parse(R"([[0, [0, 1]], [[0, -1], 0]])");
    const Eigen::MatrixXcd y = matrix_from_json(nested, 2, "y");
    CHECK((y - pauli_y()).norm() == 0.0);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[1, 2, 3]"), 2, "bad"), ShapeError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"([1, "x", 3, 4])"), 2, "bad"), DataError);

    const auto gens = generators_from_json(json::parse(R"({"D": 3, "k": 2, "rules": [["20", "11"], ["11", "20"]]})"));
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].image()[6] == 4);
    CHECK_THROWS_AS(generators_from_json(json::parse(R"({"D": 3, "k": 2, "rules": [["20", "11"]]})")), DataError);
    CHECK_THROWS_AS(hamiltonian_from_json(json::parse(R"({"site_dim": 2, "N": 4})")), DataError);
}
