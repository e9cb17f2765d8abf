#include "aqecc/kl_checker.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "aqecc/errors.hpp"
#include "aqecc/reporting.hpp"

namespace aqecc {

ErrorBound code_error_bound(double epsilon_max, int k, int d)
{
    if (k < 1)
        throw DomainError("code_error_bound: k >= 1 required");
    if (d < 1)
        throw DomainError("code_error_bound: d >= 1 required");
    if (!(epsilon_max >= 0.0))
        throw DomainError("code_error_bound: epsilon_max must be non-negative");
    ErrorBound b;
    b.appendix = std::ldexp(std::sqrt(epsilon_max), d + 2 * k);
    b.maintext = std::ldexp(epsilon_max, 2 * (k + d));
    return b;
}

BenyOreshkov beny_oreshkov_decomposition(std::span<const DenseState> codewords, const LocalOperator& e_i,
                                         const LocalOperator& e_j)
{
    if (codewords.empty())
        throw ShapeError("beny_oreshkov_decomposition: no codewords");
    const auto n = static_cast<Eigen::Index>(codewords.size());
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b)
            if (std::abs(codewords[static_cast<std::size_t>(a)].amplitudes.dot(
                    codewords[static_cast<std::size_t>(b)].amplitudes))
                > 1e-10)
                throw OrthogonalityError("beny_oreshkov_decomposition: codewords are not orthogonal");

    // <psi_l| Ei^dag Ej |psi_k> = <Ei psi_l | Ej psi_k>
    std::vector<Eigen::VectorXcd> left(codewords.size());
    std::vector<Eigen::VectorXcd> right(codewords.size());
    for (std::size_t c = 0; c < codewords.size(); ++c) {
        left[c] = apply(e_i, codewords[c]);
        right[c] = apply(e_j, codewords[c]);
    }

    BenyOreshkov out;
    out.B.resize(n, n);
    for (Eigen::Index l = 0; l < n; ++l)
        for (Eigen::Index k = 0; k < n; ++k)
            out.B(l, k) = left[static_cast<std::size_t>(l)].dot(right[static_cast<std::size_t>(k)]);
    out.lambda = out.B(0, 0);
    out.B.diagonal().array() -= out.lambda;
    out.trace_norm = trace_norm(out.B);
    return out;
}

std::string operator_basis_hash(std::span<const LocalOperator> basis)
{
    std::string text;
    for (const auto& op : basis) {
        text += std::to_string(op.support_start) + ":" + std::to_string(op.support_len) + "[";
        for (Eigen::Index r = 0; r < op.matrix.rows(); ++r)
            for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
                text += format_double(op.matrix(r, c).real());
                text += ',';
                text += format_double(op.matrix(r, c).imag());
                text += ';';
            }
        text += "]";
    }
    return hex64(fnv1a64(text));
}

KLReport verify_code(const CodeSpace& space, std::span<const LocalOperator> error_basis, VerifyPath path,
                     const Budget& budget)
{
    if (space.magnetizations.empty())
        throw ShapeError("verify_code: code space has no codewords");
    if (space.d < 1 || space.d >= space.N)
        throw RangeError("verify_code: support length must satisfy 1 <= d < N");
    for (int m : space.magnetizations)
        CodewordSpec{space.model, space.N, m}.validate();

    const int D = site_dimension(space.model);
    std::vector<LocalOperator> default_basis;
    if (error_basis.empty()) {
        default_basis = local_operator_basis(D, space.d);
        error_basis = default_basis;
    }

    const bool dense_fits = budget.admits(ipow(static_cast<std::size_t>(D), space.N));
    if (path == VerifyPath::Auto)
        path = dense_fits ? VerifyPath::Dense : VerifyPath::Rdm;
    if (path == VerifyPath::Dense && !dense_fits)
        budget.require(ipow(static_cast<std::size_t>(D), space.N), "verify_code dense path");

    KLReport report;
    report.model = space.model;
    report.N = space.N;
    report.k = space.k;
    report.d = space.d;
    report.magnetizations = space.magnetizations;
    report.basis_hash = operator_basis_hash(error_basis);
    report.basis_size = error_basis.size();
    report.c_e_convention = "C_E = <psi_1|E|psi_1>, first codeword (m = " + std::to_string(space.magnetizations[0])
        + ")";

    const auto n = static_cast<Eigen::Index>(space.magnetizations.size());
    if (path == VerifyPath::Dense) {
        report.path = "dense";
        std::vector<DenseState> codewords;
        codewords.reserve(space.magnetizations.size());
        for (std::size_t i = 0; i < space.magnetizations.size(); ++i)
            codewords.push_back(build_codeword_vector(space.codeword(i), budget));
        for (const auto& op : error_basis)
            op.check_fits(space.N, D);
        report.epsilon_matrix = kl_epsilon_oracle(codewords, error_basis).epsilon;
    } else {
        report.path = "rdm";
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j)
                if (std::abs(space.magnetizations[static_cast<std::size_t>(i)]
                             - space.magnetizations[static_cast<std::size_t>(j)])
                    <= 2 * space.d)
                    throw DomainError("verify_code rdm path: codewords closer than 2d in magnetization; "
                                      "the selection rule does not zero their off-diagonal elements");
        report.epsilon_matrix = Eigen::MatrixXd::Zero(n, n);
        const auto reference = schmidt_weights(space.codeword(0), space.d);
        for (Eigen::Index i = 1; i < n; ++i)
            report.epsilon_matrix(i, i)
                = rdm_trace_distance(schmidt_weights(space.codeword(static_cast<std::size_t>(i)), space.d), reference);
    }

    report.epsilon_max = report.epsilon_matrix.maxCoeff();
    const ErrorBound bound = code_error_bound(report.epsilon_max, space.k, space.d);
    report.bound_appendix = bound.appendix;
    report.bound_maintext = bound.maintext;
    return report;
}

} // namespace aqecc
