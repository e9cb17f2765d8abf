#include <doctest.h>

#include <cmath>

#include "aqecc/errors.hpp"
#include "aqecc/parent_hamiltonian.hpp"
#include "oracles.hpp"

using namespace aqecc;

namespace {

bool has_failure(const GroundSpaceReport& r, const std::string& prefix)
{
    for (const auto& f : r.failures)
        if (f.rfind(prefix, 0) == 0)
            return true;
    return false;
}

} // namespace

TEST_CASE("generator validation")
{
    const auto moves = motzkin_moves();
    REQUIRE(moves.size() == 3);
    for (const auto& g : moves) {
        CHECK(g.D == 3);
        CHECK(g.k == 2);
        const auto img = g.image();
        for (std::size_t a = 0; a < img.size(); ++a)
            CHECK(img[img[a]] == a);
    }
    CHECK_THROWS_AS(swap_generator(2, "01", "1").validate(), DataError);
    CHECK_THROWS_AS(swap_generator(2, "02", "10").validate(), DataError);
    LocalSymmetryGenerator many_to_one{2, 2, {{"01", "00"}}};
    CHECK_THROWS_AS(many_to_one.validate(), DataError);
    LocalSymmetryGenerator cycle{2, 2, {{"00", "01"}, {"01", "10"}, {"10", "00"}}};
    CHECK_NOTHROW(cycle.validate());
    const std::vector<LocalSymmetryGenerator> wrong_d{swap_generator(2, "01", "10")};
    CHECK_THROWS_AS(orbit_decompose(wrong_d, 3, 4), DataError);
}

TEST_CASE("orbit decomposition")
{
    const auto none = orbit_decompose({}, 2, 3);
    CHECK(none.size() == 8);
    for (const auto& o : none.orbits)
        CHECK(o.size() == 1);

    const auto moves = motzkin_moves();
    const auto two = orbit_decompose(moves, 3, 2);
    REQUIRE(two.size() == 5);
    const std::size_t sizes[] = {1, 2, 3, 2, 1};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(two.orbits[i].size() == sizes[i]);
        CHECK(oracle::magnetization(two.representative(i), 3, 2) == static_cast<int>(i) - 2);
    }

    // Each orbit is exactly one magnetization sector.
    for (int N = 3; N <= 7; ++N) {
        const auto p = orbit_decompose(moves, 3, N);
        CHECK(p.size() == static_cast<std::size_t>(2 * N + 1));
        for (std::size_t o = 0; o < p.size(); ++o) {
            const int m = oracle::magnetization(p.representative(o), 3, N);
            CHECK(p.orbits[o].size() == oracle::count_strings(3, N, m));
            for (auto s : p.orbits[o])
                CHECK(p.orbit_of[s] == o);
        }
    }
    const auto ex = exchange_moves();
    CHECK(orbit_decompose(ex, 2, 6).size() == 7);

    CHECK_THROWS_AS(orbit_decompose(moves, 3, 12), BudgetError);
}

TEST_CASE("uniform orbit states")
{
    const auto p = orbit_decompose(motzkin_moves(), 3, 4);
    for (std::size_t o = 0; o < p.size(); ++o) {
        const int m = oracle::magnetization(p.representative(o), 3, 4);
        CHECK((p.uniform_state(o) - oracle::sector_state(3, 4, m)).norm() <= 1e-14);
    }
}

TEST_CASE("projector hamiltonian reproduces the Motzkin chain")
{
    const auto moves = motzkin_moves();
    for (int N = 3; N <= 4; ++N) {
        const auto built = build_projector_hamiltonian(moves, 3, N);
        const Eigen::MatrixXcd a = oracle::dense_hamiltonian(built);
        const Eigen::MatrixXcd b = oracle::dense_hamiltonian(build_hamiltonian(ModelName::MotzkinPBC, N));
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
    }
    const auto empty = build_projector_hamiltonian({}, 2, 4);
    CHECK(oracle::dense_hamiltonian(empty).norm() == 0.0);

    // Each term is an orthogonal projector.
    const auto h = build_projector_hamiltonian(exchange_moves(), 2, 5);
    for (const auto& t : h.terms)
        CHECK((t.matrix * t.matrix - t.matrix).norm() <= 1e-14);
}

TEST_CASE("ground space checks")
{
    const auto moves = motzkin_moves();
    const auto p4 = orbit_decompose(moves, 3, 4);
    const auto mot = ground_space_check(build_hamiltonian(ModelName::MotzkinPBC, 4), p4);
    CHECK(mot.passed());
    CHECK(mot.degeneracy == 9);
    CHECK(mot.orbit_count == 9);
    CHECK(mot.max_term_residual <= 1e-10);
    CHECK(mot.min_eigenvalue >= -1e-10);

    // Cross-check the reported ground space against the brute-force one.
    const auto g = oracle::ground_space(oracle::dense_hamiltonian(build_hamiltonian(ModelName::MotzkinPBC, 4)));
    CHECK(g.degeneracy == 9);
    CHECK(std::abs(g.energy) <= 1e-10);

    const auto ex = exchange_moves();
    const auto pe = orbit_decompose(ex, 2, 4);
    const auto exr = ground_space_check(build_projector_hamiltonian(ex, 2, 4), pe);
    CHECK(exr.passed());
    CHECK(exr.degeneracy == 5);

    const auto none = orbit_decompose({}, 2, 4);
    const auto zero = ground_space_check(build_projector_hamiltonian({}, 2, 4), none);
    CHECK(zero.passed());
    CHECK(zero.degeneracy == 16);

    // Wrong partition: singletons are not invariant under the Motzkin chain.
    const auto wrong = ground_space_check(build_hamiltonian(ModelName::MotzkinPBC, 3), orbit_decompose({}, 3, 3));
    CHECK_FALSE(wrong.passed());
    CHECK(has_failure(wrong, "block-diagonal"));
    CHECK(has_failure(wrong, "degeneracy"));
    CHECK(has_failure(wrong, "orbit-residual"));

    // A shifted Hamiltonian keeps its eigenvectors but loses the zero ground energy.
    auto shifted = build_hamiltonian(ModelName::MotzkinPBC, 3);
    shifted.terms.push_back({1, Eigen::MatrixXcd::Identity(3, 3)});
    const auto sr = ground_space_check(shifted, orbit_decompose(moves, 3, 3));
    CHECK(has_failure(sr, "min-eigenvalue"));

    CHECK_THROWS_AS(ground_space_check(build_hamiltonian(ModelName::MotzkinPBC, 3), p4), ShapeError);
}
