#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "aqecc/codeword_rdm.hpp"
#include "aqecc/lattice.hpp"

namespace aqecc {

// Explicit state vector on N sites, indexed as in ChainBasis.
struct DenseState {
    int N = 0;
    int site_dim = 2;
    Eigen::VectorXcd amplitudes;

    ChainBasis basis() const { return ChainBasis(site_dim, N); }
};

// Operator on support_len consecutive sites starting at 1-based
// support_start, wrapping periodically.
struct LocalOperator {
    int support_start = 1;
    int support_len = 1;
    Eigen::MatrixXcd matrix;

    // Throws ShapeError unless the operator fits a chain of N sites with
    // local dimension site_dim.
    void check_fits(int N, int site_dim) const;
};

// Uniform superposition of all basis strings with magnetization m.
DenseState build_codeword_vector(const CodewordSpec& spec, const Budget& budget = Budget::from_env());
DenseState uniform_sector_state(int site_dim, int N, int m, const Budget& budget = Budget::from_env());

// E|state>, with E embedded at its support.
Eigen::VectorXcd apply(const LocalOperator& op, const DenseState& state);
cplx matrix_element(const DenseState& bra, const LocalOperator& op, const DenseState& ket);

// Tr_complement |psi><psi| on the wrapped support (1-based start).
Eigen::MatrixXcd partial_trace(const DenseState& state, int support_start, int support_len,
                               const Budget& budget = Budget::from_env());

// Tensor products of a unit-operator-norm Hermitian single-site basis over d
// consecutive sites: {I, X, Y, Z} for spin-1/2; for spin-1 the identity, Sz,
// 2Sz^2 - I and the six off-diagonal real/imaginary pair matrices.
std::vector<LocalOperator> local_operator_basis(int site_dim, int d, int support_start = 1);

// Dense d-site matrix sum_r w_r |sector_r><sector_r| for a closed-form RDM.
Eigen::MatrixXcd rdm_to_dense(const ReducedDensityMatrix& rdm);

struct KLEpsilon {
    // epsilon(i, j) = max over the basis of |<psi_i|E|psi_j> - C_E delta_ij|.
    Eigen::MatrixXd epsilon;
    // C_E = <psi_1|E|psi_1>, one entry per basis operator.
    std::vector<cplx> c_e;
};

// Throws OrthogonalityError if codewords overlap beyond 1e-10.
KLEpsilon kl_epsilon_oracle(std::span<const DenseState> codewords, std::span<const LocalOperator> error_basis);

} // namespace aqecc
