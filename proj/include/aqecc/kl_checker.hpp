#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aqecc/codeword_rdm.hpp"
#include "aqecc/dense_oracle.hpp"

namespace aqecc {

struct ErrorBound {
    double appendix = 0.0; // 2^{d+2k} sqrt(eps_max), the proof-backed form
    double maintext = 0.0; // 2^{2(k+d)} eps_max
};

ErrorBound code_error_bound(double epsilon_max, int k, int d);

struct BenyOreshkov {
    cplx lambda;
    // B(l, k) = <psi_l|Ei^dag Ej|psi_k> - lambda delta_lk
    Eigen::MatrixXcd B;
    double trace_norm = 0.0;
};

// lambda is pinned to the first codeword.
BenyOreshkov beny_oreshkov_decomposition(std::span<const DenseState> codewords, const LocalOperator& e_i,
                                         const LocalOperator& e_j);

enum class VerifyPath { Auto, Dense, Rdm };

struct KLReport {
    Model model = Model::HeisenbergSpinHalf;
    int N = 0;
    int k = 0;
    int d = 0;
    std::vector<int> magnetizations;
    double epsilon_max = 0.0;
    Eigen::MatrixXd epsilon_matrix;
    double bound_appendix = 0.0;
    double bound_maintext = 0.0;
    std::string c_e_convention;
    std::string path;       // "dense" or "rdm"
    std::string basis_hash; // FNV-1a of the operator basis, hex
    std::size_t basis_size = 0;
};

// Checks every codeword pair of the ladder. The dense path evaluates the
// operator basis on explicit vectors; the rdm path takes the diagonal from
// closed-form trace distances (the supremum over unit-norm operators) and
// sets off-diagonal entries to zero by the magnetization selection rule.
// An empty basis means local_operator_basis(site_dim, d).
KLReport verify_code(const CodeSpace& space, std::span<const LocalOperator> error_basis = {},
                     VerifyPath path = VerifyPath::Auto, const Budget& budget = Budget::from_env());

std::string operator_basis_hash(std::span<const LocalOperator> basis);

} // namespace aqecc
