#include <doctest.h>

#include <cmath>

#include "aqecc/dense_oracle.hpp"
#include "aqecc/errors.hpp"
#include "oracles.hpp"

using namespace aqecc;

namespace {

LocalOperator single(const Eigen::MatrixXcd& m, int start)
{
    return {start, 1, m};
}

} // namespace

TEST_CASE("codeword vectors")
{
    const auto h = build_codeword_vector({Model::HeisenbergSpinHalf, 2, 0});
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected[1] = expected[2] = 1.0 / std::sqrt(2.0);
    CHECK((h.amplitudes - expected).norm() <= 1e-15);

    // digits: d = 0, 0 = 1, u = 2; |00> = 4, |ud> = 6, |du> = 2
    const auto g = build_codeword_vector({Model::MotzkinSpinOne, 2, 0});
    Eigen::VectorXcd eg = Eigen::VectorXcd::Zero(9);
    eg[2] = eg[4] = eg[6] = 1.0 / std::sqrt(3.0);
    CHECK((g.amplitudes - eg).norm() <= 1e-15);

    const auto up = build_codeword_vector({Model::HeisenbergSpinHalf, 3, 3});
    CHECK(std::abs(up.amplitudes[7] - cplx(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(up.amplitudes.norm() - 1.0) <= 1e-15);

    for (int m = -5; m <= 5; ++m)
        CHECK((build_codeword_vector({Model::MotzkinSpinOne, 5, m}).amplitudes - oracle::sector_state(3, 5, m)).norm()
              <= 1e-14);

    CHECK_THROWS_AS(build_codeword_vector({Model::HeisenbergSpinHalf, 20, 0}), BudgetError);
}

TEST_CASE("matrix elements")
{
    const auto h6 = build_codeword_vector({Model::HeisenbergSpinHalf, 6, 0});
    CHECK(std::abs(matrix_element(h6, single(Eigen::MatrixXcd::Identity(2, 2), 4), h6) - cplx(1.0, 0.0)) <= 1e-14);
    CHECK(std::abs(matrix_element(h6, single(pauli_z(), 1), h6)) <= 1e-14);

    const auto h0 = build_codeword_vector({Model::HeisenbergSpinHalf, 8, 0});
    const auto h4 = build_codeword_vector({Model::HeisenbergSpinHalf, 8, 4});
    CHECK(std::abs(matrix_element(h0, single(pauli_x(), 3), h4)) <= 1e-14);
    CHECK(matrix_element(h4, single(pauli_z(), 5), h4).real() == doctest::Approx(0.5).epsilon(1e-14));

    // Wrapped two-site support against the brute-force embedding.
    const Eigen::MatrixXcd xy = kron(pauli_x(), pauli_y());
    const Eigen::VectorXcd psi = Eigen::VectorXcd::Random(64);
    const DenseState state{6, 2, psi};
    const Eigen::VectorXcd reference = oracle::embed(xy, {5, 0}, 2, 6) * psi;
    CHECK((apply({6, 2, xy}, state) - reference).norm() <= 1e-12);

    CHECK_THROWS_AS(apply({1, 2, pauli_x()}, state), ShapeError);
    CHECK_THROWS_AS(apply({7, 1, pauli_x()}, state), ShapeError);
}

TEST_CASE("partial trace against explicit summation")
{
    const auto up = build_codeword_vector({Model::HeisenbergSpinHalf, 3, 3});
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
    expected(1, 1) = 1.0;
    for (int s = 1; s <= 3; ++s)
        CHECK((partial_trace(up, s, 1) - expected).norm() <= 1e-15);

    const Eigen::VectorXcd psi = Eigen::VectorXcd::Random(243).normalized();
    const DenseState state{5, 3, psi};
    CHECK((partial_trace(state, 4, 3) - oracle::partial_trace(psi, {3, 4, 0}, 3, 5)).norm() <= 1e-12);
    CHECK((partial_trace(state, 2, 2) - oracle::partial_trace(psi, {1, 2}, 3, 5)).norm() <= 1e-12);
    CHECK_THROWS_AS(partial_trace(state, 0, 1), ShapeError);
}

TEST_CASE("local operator bases")
{
    for (int D : {2, 3})
        for (int d : {1, 2}) {
            const auto ops = local_operator_basis(D, d);
            const auto n = static_cast<std::size_t>(std::pow(D, 2 * d));
            CHECK(ops.size() == n);
            // Linear independence: the flattened operators have full rank.
            const auto ld = static_cast<Eigen::Index>(std::pow(D, d));
            Eigen::MatrixXcd stacked(ld * ld, static_cast<Eigen::Index>(ops.size()));
            for (std::size_t i = 0; i < ops.size(); ++i) {
                CHECK(ops[i].support_len == d);
                CHECK(operator_norm(ops[i].matrix) == doctest::Approx(1.0).epsilon(1e-12));
                CHECK((ops[i].matrix - ops[i].matrix.adjoint()).norm() <= 1e-15);
                stacked.col(static_cast<Eigen::Index>(i)) = ops[i].matrix.reshaped();
            }
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(stacked);
            CHECK(lu.rank() == ld * ld);
        }
}

TEST_CASE("knill-laflamme epsilon oracle")
{
    const auto h = build_codeword_vector({Model::HeisenbergSpinHalf, 6, 0});
    const std::vector<DenseState> one{h};
    const std::vector<LocalOperator> id{{1, 1, Eigen::MatrixXcd::Identity(2, 2)}};
    const auto r = kl_epsilon_oracle(one, id);
    CHECK(r.epsilon.rows() == 1);
    CHECK(r.epsilon(0, 0) == 0.0);
    CHECK(std::abs(r.c_e[0] - cplx(1.0, 0.0)) <= 1e-14);

    const std::vector<DenseState> pair{build_codeword_vector({Model::HeisenbergSpinHalf, 10, 0}),
                                       build_codeword_vector({Model::HeisenbergSpinHalf, 10, 4})};
    const std::vector<LocalOperator> z{{1, 1, pauli_z()}};
    const auto e = kl_epsilon_oracle(pair, z);
    CHECK(e.epsilon(1, 1) == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(e.epsilon(0, 1) <= 1e-14);

    const std::vector<DenseState> same{h, h};
    CHECK_THROWS_AS(kl_epsilon_oracle(same, id), OrthogonalityError);
}
