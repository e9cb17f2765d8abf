#pragma once

// Brute-force reference implementations used only by tests. They work on
// explicit digit arrays and share no code with the library's index tricks.

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aqecc/spin_chain.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline std::vector<int> digits_of(std::size_t index, int D, int N)
{
    std::vector<int> d(static_cast<std::size_t>(N));
    for (int s = N - 1; s >= 0; --s) {
        d[static_cast<std::size_t>(s)] = static_cast<int>(index % static_cast<std::size_t>(D));
        index /= static_cast<std::size_t>(D);
    }
    return d;
}

inline std::size_t index_of(const std::vector<int>& d, int D)
{
    std::size_t i = 0;
    for (int v : d)
        i = i * static_cast<std::size_t>(D) + static_cast<std::size_t>(v);
    return i;
}

inline std::size_t power(int D, int N)
{
    std::size_t p = 1;
    for (int i = 0; i < N; ++i)
        p *= static_cast<std::size_t>(D);
    return p;
}

inline int spin_of_digit(int digit, int D)
{
    return D == 2 ? 2 * digit - 1 : digit - 1;
}

inline int magnetization(std::size_t index, int D, int N)
{
    int m = 0;
    for (int v : digits_of(index, D, N))
        m += spin_of_digit(v, D);
    return m;
}

// Number of strings in {spin values}^L summing to target.
inline std::uint64_t count_strings(int D, int L, int target)
{
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < power(D, L); ++i)
        if (magnetization(i, D, L) == target)
            ++c;
    return c;
}

inline Eigen::VectorXcd sector_state(int D, int N, int m)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(power(D, N)));
    for (std::size_t i = 0; i < power(D, N); ++i)
        if (magnetization(i, D, N) == m)
            v[static_cast<Eigen::Index>(i)] = 1.0;
    return v / v.norm();
}

// Matrix of `local` acting on `sites` (first site = most significant local digit).
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd& local, const std::vector<int>& sites, int D, int N)
{
    const std::size_t dim = power(D, N);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const auto dc = digits_of(col, D, N);
        std::vector<int> lc;
        for (int s : sites)
            lc.push_back(dc[static_cast<std::size_t>(s)]);
        const auto a = index_of(lc, D);
        for (std::size_t b = 0; b < static_cast<std::size_t>(local.rows()); ++b) {
            const cplx v = local(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
            if (v == cplx(0.0, 0.0))
                continue;
            auto dr = dc;
            const auto lb = digits_of(b, D, static_cast<int>(sites.size()));
            for (std::size_t t = 0; t < sites.size(); ++t)
                dr[static_cast<std::size_t>(sites[t])] = lb[t];
            M(static_cast<Eigen::Index>(index_of(dr, D)), static_cast<Eigen::Index>(col)) += v;
        }
    }
    return M;
}

inline Eigen::MatrixXcd dense_hamiltonian(const aqecc::LocalHamiltonian& h)
{
    const auto dim = static_cast<Eigen::Index>(power(h.site_dim, h.N));
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : h.terms)
        for (int j = 0; j < h.N; ++j) {
            std::vector<int> sites;
            for (int s = 0; s < t.support_len; ++s)
                sites.push_back((j + s) % h.N);
            H += embed(t.matrix, sites, h.site_dim, h.N);
        }
    return H;
}

// T moves the content of site j to site j+1 (mod N).
inline Eigen::MatrixXcd translation(int D, int N)
{
    const std::size_t dim = power(D, N);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const auto d = digits_of(i, D, N);
        std::vector<int> out(d.size());
        for (int s = 0; s < N; ++s)
            out[static_cast<std::size_t>((s + 1) % N)] = d[static_cast<std::size_t>(s)];
        T(static_cast<Eigen::Index>(index_of(out, D)), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return T;
}

inline Eigen::MatrixXcd total_magnetization(int D, int N)
{
    const std::size_t dim = power(D, N);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = magnetization(i, D, N);
    return M;
}

// Tr over all sites outside `sites` of |psi><psi|, by explicit summation.
inline Eigen::MatrixXcd partial_trace(const Eigen::VectorXcd& psi, const std::vector<int>& sites, int D, int N)
{
    const auto ld = static_cast<Eigen::Index>(power(D, static_cast<int>(sites.size())));
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(ld, ld);
    const std::size_t dim = power(D, N);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto di = digits_of(i, D, N);
        for (std::size_t j = 0; j < dim; ++j) {
            const auto dj = digits_of(j, D, N);
            bool same_env = true;
            for (int s = 0; s < N && same_env; ++s) {
                bool inside = false;
                for (int t : sites)
                    inside = inside || t == s;
                if (!inside && di[static_cast<std::size_t>(s)] != dj[static_cast<std::size_t>(s)])
                    same_env = false;
            }
            if (!same_env)
                continue;
            std::vector<int> a;
            std::vector<int> b;
            for (int t : sites) {
                a.push_back(di[static_cast<std::size_t>(t)]);
                b.push_back(dj[static_cast<std::size_t>(t)]);
            }
            rho(static_cast<Eigen::Index>(index_of(a, D)), static_cast<Eigen::Index>(index_of(b, D)))
                += psi[static_cast<Eigen::Index>(i)] * std::conj(psi[static_cast<Eigen::Index>(j)]);
        }
    }
    return rho;
}

// Projector onto the eigenspace of the smallest eigenvalue (within tol) and its dimension.
struct GroundSpace {
    double energy = 0.0;
    Eigen::Index degeneracy = 0;
    Eigen::MatrixXcd projector;
};

inline GroundSpace ground_space(const Eigen::MatrixXcd& H, double tol = 1e-8)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    GroundSpace g;
    g.energy = es.eigenvalues()[0];
    while (g.degeneracy < H.rows() && es.eigenvalues()[g.degeneracy] <= g.energy + tol)
        ++g.degeneracy;
    const Eigen::MatrixXcd V = es.eigenvectors().leftCols(g.degeneracy);
    g.projector = V * V.adjoint();
    return g;
}

inline double spectral_norm(const Eigen::MatrixXcd& M)
{
    if (M.size() == 0)
        return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues()(0);
}

} // namespace oracle
