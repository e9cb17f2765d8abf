#include <doctest.h>

#include <cmath>

#include "aqecc/codeword_rdm.hpp"
#include "aqecc/errors.hpp"
#include "aqecc/eth.hpp"
#include "oracles.hpp"

using namespace aqecc;

namespace {

const LocalOperator z1{1, 1, pauli_z()};

} // namespace

TEST_CASE("diagonal scan on the one-local chain")
{
    const auto sol = diagonalize_sectored(build_hamiltonian(ModelName::OneLocalSpinHalf, 10));
    const auto w = make_window(sol, 5.0);
    const auto rep = diagonal_eth_scan(sol, w, z1);
    REQUIRE(rep.rows.size() == w.members.size() - 1);
    // <E|Z_1|E> = m / N for translation eigenstates; neighbours differ by 0 or 2 / N.
    for (const auto& r : rep.rows) {
        const double gap = std::abs(r.energy_a - r.energy_b);
        CHECK(r.value == doctest::Approx(gap < 0.5 ? 0.0 : 0.2).epsilon(1e-12));
    }
    CHECK(rep.stats.defined);
    CHECK(rep.stats.max == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(rep.window_population == w.members.size());

    const auto single = diagonal_eth_scan(sol, make_window(sol, 0.0, 0.1), z1);
    CHECK(single.rows.empty());
    CHECK_FALSE(single.stats.defined);

    const LocalOperator id{3, 1, Eigen::MatrixXcd::Identity(2, 2)};
    for (const auto& r : diagonal_eth_scan(sol, w, id).rows)
        CHECK(r.value <= 1e-12);

    CHECK_THROWS_AS(diagonal_eth_scan(sol, make_window(sol, 50.0, 0.1), z1), EmptyWindowError);
}

TEST_CASE("off-diagonal selection rule")
{
    const auto one = diagonalize_sectored(build_hamiltonian(ModelName::OneLocalSpinHalf, 8));
    const auto w1 = make_window(one, 4.0);
    for (const auto& r : offdiagonal_decay_scan(one, w1, z1).rows)
        if (std::abs(r.energy_a - r.energy_b) > 0.5)
            CHECK(r.value <= 1e-12);

    const auto sol = diagonalize_sectored(build_hamiltonian(ModelName::HeisenbergPBC, 10));
    const auto w = make_window(sol, -1.0, 1.0);
    const auto rep = offdiagonal_decay_scan(sol, w, z1);
    const std::size_t n = w.members.size();
    CHECK(rep.rows.size() == n * (n - 1) / 2);
    std::size_t populated = 0;
    for (const auto& r : rep.rows) {
        if (sol.magnetization[r.index_a] != sol.magnetization[r.index_b])
            CHECK(r.value <= 1e-12);
        else if (r.value > 1e-12)
            ++populated;
    }
    CHECK(populated > 0);
    CHECK(rep.fit.has_value());
    CHECK(rep.bins.size() == 8);

    const Eigen::MatrixXd mags = offdiagonal_magnitudes(sol, w.members, z1);
    CHECK((mags - mags.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("weak eth fraction")
{
    const auto sol = diagonalize_sectored(build_hamiltonian(ModelName::OneLocalSpinHalf, 12));
    const auto w = make_window(sol, 6.0);
    CHECK(weak_eth_fraction(sol, w, z1, 2.5) == 0.0);
    CHECK(weak_eth_fraction(sol, w, z1, -2.0) == 1.0);

    // Window energies e = (N - m) / 2 in [6 - sqrt 12, 6 + sqrt 12]; count m / N >= 0.3.
    double hits = 0.0;
    double total = 0.0;
    for (int m = -12; m <= 12; m += 2) {
        const double e = (12 - m) / 2.0;
        if (std::abs(e - 6.0) > std::sqrt(12.0))
            continue;
        const auto c = static_cast<double>(oracle::count_strings(2, 12, m));
        total += c;
        if (m / 12.0 >= 0.3)
            hits += c;
    }
    CHECK(weak_eth_fraction(sol, w, z1, 0.3) == doctest::Approx(hits / total).epsilon(1e-14));
}

TEST_CASE("rdm distances between ground states match the closed form")
{
    const auto sol = diagonalize_sectored(build_hamiltonian(ModelName::HeisenbergPBC, 12));
    const auto w = make_window(sol, -6.0, 1e-6);
    REQUIRE(w.members.size() == 13);
    const auto rep = rdm_distance_pairs(sol, w, 2, 1000, 4);
    CHECK(rep.rows.size() == 78);
    for (const auto& r : rep.rows) {
        CHECK(r.index_a != r.index_b);
        const int ma = *sol.magnetization[r.index_a];
        const int mb = *sol.magnetization[r.index_b];
        const double expected = rdm_trace_distance(schmidt_weights({Model::HeisenbergSpinHalf, 12, ma}, 2),
                                                   schmidt_weights({Model::HeisenbergSpinHalf, 12, mb}, 2));
        CHECK(std::abs(r.value - expected) <= 1e-10);
    }

    const auto a = rdm_distance_pairs(sol, w, 1, 10, 21);
    const auto b = rdm_distance_pairs(sol, w, 1, 10, 21);
    REQUIRE(a.rows.size() == 10);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].index_a == b.rows[i].index_a);
        CHECK(a.rows[i].index_b == b.rows[i].index_b);
        CHECK(a.rows[i].value == b.rows[i].value);
    }
    CHECK_THROWS_AS(rdm_distance_pairs(sol, w, 11, 5, 1), BudgetError);
    CHECK_THROWS_AS(rdm_distance_pairs(sol, make_window(sol, -6.0 + 100.0, 0.5), 1, 5, 1), EmptyWindowError);
}

TEST_CASE("knill-laflamme trial on sampled eigenstates")
{
    const auto sol = diagonalize_sectored(build_hamiltonian(ModelName::OneLocalSpinHalf, 8));
    const auto w = make_window(sol, 4.0);
    const auto t = theorem1_trial(sol, w, 4, 1, SamplingMode::Uniform, 3);
    REQUIRE(t.indices.size() == 4);
    CHECK(t.distance == theorem1_distance(t.energies, 8.0));

    // Brute-force epsilon with the single-site Pauli basis at the first site.
    Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    z << -1, 0, 0, 1;
    Eigen::MatrixXd eps = Eigen::MatrixXd::Zero(4, 4);
    for (const Eigen::MatrixXcd& p : {Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2)), x, y, z}) {
        const Eigen::MatrixXcd P = oracle::embed(p, {0}, 2, 8);
        const cplx c = sol.state(t.indices[0]).dot(P * sol.state(t.indices[0]));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                cplx v = sol.state(t.indices[i]).dot(P * sol.state(t.indices[j]));
                if (i == j)
                    v -= c;
                eps(i, j) = std::max(eps(i, j), std::abs(v));
            }
    }
    CHECK((t.epsilon - eps).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(t.epsilon_max == doctest::Approx(eps.maxCoeff()).epsilon(1e-12));
}
