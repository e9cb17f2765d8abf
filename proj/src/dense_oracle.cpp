#include "aqecc/dense_oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "aqecc/errors.hpp"

namespace aqecc {

void LocalOperator::check_fits(int N, int site_dim) const
{
    if (support_len < 1 || support_len > N)
        throw ShapeError("local operator support length must lie in [1, N]");
    if (support_start < 1 || support_start > N)
        throw ShapeError("local operator support start must lie in [1, N]");
    const auto local_dim = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(site_dim), support_len));
    if (matrix.rows() != local_dim || matrix.cols() != local_dim)
        throw ShapeError("local operator matrix is " + std::to_string(matrix.rows()) + "x"
                         + std::to_string(matrix.cols()) + ", expected " + std::to_string(local_dim) + " square");
}

DenseState uniform_sector_state(int site_dim, int N, int m, const Budget& budget)
{
    ChainBasis basis(site_dim, N);
    budget.require(basis.dimension(), "codeword vector");
    DenseState state{N, site_dim, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()))};
    std::size_t count = 0;
    for (std::size_t i = 0; i < basis.dimension(); ++i)
        if (basis.magnetization(i) == m) {
            state.amplitudes[static_cast<Eigen::Index>(i)] = 1.0;
            ++count;
        }
    if (count == 0)
        throw RangeError("no basis string has magnetization " + std::to_string(m));
    state.amplitudes /= std::sqrt(static_cast<double>(count));
    return state;
}

DenseState build_codeword_vector(const CodewordSpec& spec, const Budget& budget)
{
    spec.validate();
    return uniform_sector_state(site_dimension(spec.model), spec.N, spec.m, budget);
}

Eigen::VectorXcd apply(const LocalOperator& op, const DenseState& state)
{
    op.check_fits(state.N, state.site_dim);
    const ChainBasis basis = state.basis();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes.size());
    const auto sites = basis.support_sites(op.support_start - 1, op.support_len);
    apply_local(basis, sites, op.matrix, state.amplitudes, out);
    return out;
}

cplx matrix_element(const DenseState& bra, const LocalOperator& op, const DenseState& ket)
{
    if (bra.N != ket.N || bra.site_dim != ket.site_dim)
        throw ShapeError("matrix_element: bra and ket live on different chains");
    return bra.amplitudes.dot(apply(op, ket));
}

Eigen::MatrixXcd partial_trace(const DenseState& state, int support_start, int support_len, const Budget& budget)
{
    if (support_len < 1 || support_len > state.N || support_start < 1 || support_start > state.N)
        throw ShapeError("partial_trace: support outside the chain");
    const ChainBasis basis = state.basis();
    budget.require(basis.dimension(), "partial_trace state");
    const std::size_t local_dim = ipow(static_cast<std::size_t>(state.site_dim), support_len);
    budget.require(local_dim * local_dim, "partial_trace reduced matrix");
    const auto sites = basis.support_sites(support_start - 1, support_len);
    return reduce_pure(basis, state.amplitudes, sites);
}

namespace {

std::vector<Eigen::MatrixXcd> single_site_basis(int site_dim)
{
    std::vector<Eigen::MatrixXcd> ops;
    if (site_dim == 2) {
        ops = {Eigen::MatrixXcd::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
        return ops;
    }
    if (site_dim != 3)
        throw ShapeError("local operator basis: site dimension must be 2 or 3");
    const Eigen::MatrixXcd sz = spin_z(3);
    ops.push_back(Eigen::MatrixXcd::Identity(3, 3));
    ops.push_back(sz);
    ops.push_back(2.0 * sz * sz - Eigen::MatrixXcd::Identity(3, 3));
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Eigen::MatrixXcd re = Eigen::MatrixXcd::Zero(3, 3);
            re(a, b) = 1.0;
            re(b, a) = 1.0;
            Eigen::MatrixXcd im = Eigen::MatrixXcd::Zero(3, 3);
            im(a, b) = cplx(0.0, -1.0);
            im(b, a) = cplx(0.0, 1.0);
            ops.push_back(re);
            ops.push_back(im);
        }
    return ops;
}

} // namespace

std::vector<LocalOperator> local_operator_basis(int site_dim, int d, int support_start)
{
    if (d < 1)
        throw ShapeError("local operator basis needs d >= 1");
    const auto single = single_site_basis(site_dim);
    std::vector<Eigen::MatrixXcd> products = single;
    for (int s = 1; s < d; ++s) {
        std::vector<Eigen::MatrixXcd> next;
        next.reserve(products.size() * single.size());
        for (const auto& p : products)
            for (const auto& q : single)
                next.push_back(kron(p, q));
        products = std::move(next);
    }
    std::vector<LocalOperator> out;
    out.reserve(products.size());
    for (auto& p : products)
        out.push_back({support_start, d, std::move(p)});
    return out;
}

Eigen::MatrixXcd rdm_to_dense(const ReducedDensityMatrix& rdm)
{
    const int D = site_dimension(rdm.model);
    const ChainBasis local(D, rdm.d);
    const auto dim = static_cast<Eigen::Index>(local.dimension());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = -rdm.d; r <= rdm.d; ++r) {
        const double w = rdm.weight(r);
        if (w == 0.0)
            continue;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        for (std::size_t i = 0; i < local.dimension(); ++i)
            if (local.magnetization(i) == r)
                v[static_cast<Eigen::Index>(i)] = 1.0;
        v.normalize();
        rho += w * v * v.adjoint();
    }
    return rho;
}

KLEpsilon kl_epsilon_oracle(std::span<const DenseState> codewords, std::span<const LocalOperator> error_basis)
{
    if (codewords.empty())
        throw ShapeError("kl_epsilon_oracle: no codewords");
    const auto n = static_cast<Eigen::Index>(codewords.size());
    for (const auto& c : codewords)
        if (c.N != codewords[0].N || c.site_dim != codewords[0].site_dim)
            throw ShapeError("kl_epsilon_oracle: codewords live on different chains");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double overlap = std::abs(codewords[static_cast<std::size_t>(i)].amplitudes.dot(
                codewords[static_cast<std::size_t>(j)].amplitudes));
            if (overlap > 1e-10)
                throw OrthogonalityError("kl_epsilon_oracle: codewords " + std::to_string(i + 1) + " and "
                                         + std::to_string(j + 1) + " overlap by " + std::to_string(overlap));
        }

    KLEpsilon result;
    result.epsilon = Eigen::MatrixXd::Zero(n, n);
    result.c_e.reserve(error_basis.size());
    std::vector<Eigen::VectorXcd> images(codewords.size());
    for (const auto& op : error_basis) {
        for (std::size_t j = 0; j < codewords.size(); ++j)
            images[j] = apply(op, codewords[j]);
        const cplx c_e = codewords[0].amplitudes.dot(images[0]);
        result.c_e.push_back(c_e);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                cplx v = codewords[static_cast<std::size_t>(i)].amplitudes.dot(images[static_cast<std::size_t>(j)]);
                if (i == j)
                    v -= c_e;
                result.epsilon(i, j) = std::max(result.epsilon(i, j), std::abs(v));
            }
    }
    return result;
}

} // namespace aqecc
