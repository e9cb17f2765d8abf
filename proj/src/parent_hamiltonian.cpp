#include "aqecc/parent_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "aqecc/errors.hpp"
#include "aqecc/reporting.hpp"

namespace aqecc {

namespace {

std::size_t string_index(const std::string& s, int D, int k)
{
    if (static_cast<int>(s.size()) != k)
        throw DataError("rule string '" + s + "' does not have length " + std::to_string(k));
    std::size_t a = 0;
    for (char c : s) {
        const int digit = c - '0';
        if (digit < 0 || digit >= D)
            throw DataError("rule string '" + s + "' uses a digit outside 0.." + std::to_string(D - 1));
        a = a * static_cast<std::size_t>(D) + static_cast<std::size_t>(digit);
    }
    return a;
}

// Full-index contribution of every local index on `sites`.
std::vector<std::size_t> local_offsets(const ChainBasis& basis, const std::vector<int>& sites)
{
    const auto D = static_cast<std::size_t>(basis.site_dim());
    const std::size_t local_dim = ipow(D, static_cast<int>(sites.size()));
    std::vector<std::size_t> off(local_dim, 0);
    for (std::size_t b = 0; b < local_dim; ++b) {
        std::size_t rest = b;
        for (std::size_t t = sites.size(); t-- > 0;) {
            off[b] += (rest % D) * basis.place(sites[t]);
            rest /= D;
        }
    }
    return off;
}

std::size_t local_of(const ChainBasis& basis, const std::vector<int>& sites, std::size_t index)
{
    std::size_t a = 0;
    for (int s : sites)
        a = a * static_cast<std::size_t>(basis.site_dim()) + static_cast<std::size_t>(basis.digit(index, s));
    return a;
}

void check_generators(std::span<const LocalSymmetryGenerator> generators, int D, int N)
{
    for (const auto& g : generators) {
        g.validate();
        if (g.D != D)
            throw DataError("generator site dimension " + std::to_string(g.D) + " differs from D = "
                            + std::to_string(D));
        if (g.k > N)
            throw RangeError("generator support " + std::to_string(g.k) + " exceeds N = " + std::to_string(N));
    }
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // The smaller root survives, so every root is its component's least member.
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (b < a)
            std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

void LocalSymmetryGenerator::validate() const
{
    if (D != 2 && D != 3)
        throw DataError("generator site dimension must be 2 or 3");
    if (k < 1)
        throw DataError("generator support must be positive");
    (void)image();
}

std::vector<std::size_t> LocalSymmetryGenerator::image() const
{
    const std::size_t local_dim = ipow(static_cast<std::size_t>(D), k);
    std::vector<std::size_t> img(local_dim);
    std::iota(img.begin(), img.end(), std::size_t{0});
    std::vector<bool> listed(local_dim, false);
    for (const auto& [in, out] : rules) {
        const std::size_t a = string_index(in, D, k);
        if (listed[a])
            throw DataError("rule input '" + in + "' listed twice");
        listed[a] = true;
        img[a] = string_index(out, D, k);
    }
    std::vector<bool> hit(local_dim, false);
    for (std::size_t a = 0; a < local_dim; ++a) {
        if (hit[img[a]])
            throw DataError("generator is not injective: two strings map to the same image");
        hit[img[a]] = true;
    }
    return img;
}

LocalSymmetryGenerator swap_generator(int D, const std::string& a, const std::string& b)
{
    if (a.size() != b.size())
        throw DataError("swap strings differ in length");
    LocalSymmetryGenerator g{D, static_cast<int>(a.size()), {{a, b}, {b, a}}};
    g.validate();
    return g;
}

std::vector<LocalSymmetryGenerator> motzkin_moves()
{
    return {swap_generator(3, "20", "11"), swap_generator(3, "12", "21"), swap_generator(3, "10", "01")};
}

std::vector<LocalSymmetryGenerator> exchange_moves()
{
    return {swap_generator(2, "01", "10")};
}

Eigen::VectorXcd OrbitPartition::uniform_state(std::size_t orbit) const
{
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(orbit_of.size()));
    const double amp = 1.0 / std::sqrt(static_cast<double>(orbits[orbit].size()));
    for (auto i : orbits[orbit])
        psi[static_cast<Eigen::Index>(i)] = amp;
    return psi;
}

OrbitPartition orbit_decompose(std::span<const LocalSymmetryGenerator> generators, int D, int N,
                               const Budget& budget)
{
    const ChainBasis basis(D, N);
    budget.require(basis.dimension(), "orbit_decompose");
    check_generators(generators, D, N);

    const std::size_t dim = basis.dimension();
    UnionFind uf(dim);
    for (const auto& g : generators) {
        const auto img = g.image();
        for (int j = 0; j < N; ++j) {
            const auto sites = basis.support_sites(j, g.k);
            const auto off = local_offsets(basis, sites);
            for (std::size_t i = 0; i < dim; ++i) {
                const std::size_t a = local_of(basis, sites, i);
                if (img[a] != a)
                    uf.unite(i, i - off[a] + off[img[a]]);
            }
        }
    }

    OrbitPartition p;
    p.D = D;
    p.N = N;
    p.orbit_of.assign(dim, 0);
    std::vector<std::size_t> orbit_of_root(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t r = uf.find(i);
        if (orbit_of_root[r] == dim) {
            orbit_of_root[r] = p.orbits.size();
            p.orbits.emplace_back();
        }
        p.orbit_of[i] = orbit_of_root[r];
        p.orbits[orbit_of_root[r]].push_back(i);
    }
    return p;
}

LocalHamiltonian build_projector_hamiltonian(std::span<const LocalSymmetryGenerator> generators, int D, int N)
{
    const ChainBasis basis(D, N);
    check_generators(generators, D, N);
    LocalHamiltonian h;
    h.site_dim = D;
    h.N = N;
    h.name = "projector";
    for (const auto& g : generators) {
        const auto img = g.image();
        const auto local_dim = static_cast<Eigen::Index>(img.size());
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Zero(local_dim, local_dim);
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < img.size(); ++a)
            if (img[a] != a)
                pairs.emplace(std::min(a, img[a]), std::max(a, img[a]));
        for (const auto& [a, b] : pairs) {
            const auto ia = static_cast<Eigen::Index>(a);
            const auto ib = static_cast<Eigen::Index>(b);
            term(ia, ia) += 0.5;
            term(ib, ib) += 0.5;
            term(ia, ib) -= 0.5;
            term(ib, ia) -= 0.5;
        }
        h.terms.push_back({g.k, term});
    }
    return h;
}

namespace {

// max over orbits of ||A psi_B||, using the columns of a sparse A.
double max_orbit_residual(const SparseOperator& A, const OrbitPartition& p)
{
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(A.rows());
    std::vector<Eigen::Index> touched;
    double worst = 0.0;
    for (const auto& orbit : p.orbits) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(orbit.size()));
        for (auto s : orbit)
            for (SparseOperator::InnerIterator it(A, static_cast<Eigen::Index>(s)); it; ++it) {
                acc[it.row()] += it.value() * amp;
                touched.push_back(it.row());
            }
        double norm2 = 0.0;
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto r : touched) {
            norm2 += std::norm(acc[r]);
            acc[r] = 0.0;
        }
        touched.clear();
        worst = std::max(worst, std::sqrt(norm2));
    }
    return worst;
}

} // namespace

GroundSpaceReport ground_space_check(const LocalHamiltonian& h, const OrbitPartition& partition,
                                     const Budget& budget)
{
    const SparseOperator H = to_sparse(h, budget);
    const ChainBasis basis(h.site_dim, h.N);
    if (partition.orbit_of.size() != basis.dimension() || partition.D != h.site_dim || partition.N != h.N)
        throw ShapeError("ground_space_check: partition does not match the hamiltonian");

    GroundSpaceReport rep;
    rep.orbit_count = partition.size();
    for (Eigen::Index c = 0; c < H.outerSize(); ++c)
        for (SparseOperator::InnerIterator it(H, c); it; ++it)
            if (partition.orbit_of[static_cast<std::size_t>(it.row())] != partition.orbit_of[static_cast<std::size_t>(c)])
                rep.max_cross_orbit_element = std::max(rep.max_cross_orbit_element, std::abs(it.value()));

    rep.max_orbit_residual = max_orbit_residual(H, partition);
    for (const auto& t : h.terms)
        for (int j = 0; j < h.N; ++j) {
            std::vector<Eigen::Triplet<cplx>> trip;
            embed_local(basis, basis.support_sites(j, t.support_len), t.matrix, trip);
            SparseOperator P(H.rows(), H.cols());
            P.setFromTriplets(trip.begin(), trip.end());
            rep.max_term_residual = std::max(rep.max_term_residual, max_orbit_residual(P, partition));
        }

    constexpr double kGroundTol = 1e-9;
    if (rep.max_cross_orbit_element <= 1e-12) {
        // Block diagonal: each orbit block is diagonalized on its own.
        std::vector<Eigen::Index> position(basis.dimension());
        std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> blocks(partition.size());
        rep.min_eigenvalue = std::numeric_limits<double>::infinity();
        for (std::size_t o = 0; o < partition.size(); ++o) {
            const auto& orbit = partition.orbits[o];
            const auto n = static_cast<Eigen::Index>(orbit.size());
            for (Eigen::Index k = 0; k < n; ++k)
                position[orbit[static_cast<std::size_t>(k)]] = k;
            Eigen::MatrixXcd Hb = Eigen::MatrixXcd::Zero(n, n);
            for (Eigen::Index k = 0; k < n; ++k)
                for (SparseOperator::InnerIterator it(H, static_cast<Eigen::Index>(orbit[static_cast<std::size_t>(k)]));
                     it; ++it)
                    Hb(position[static_cast<std::size_t>(it.row())], k) = it.value();
            blocks[o].compute(Hb);
            rep.min_eigenvalue = std::min(rep.min_eigenvalue, blocks[o].eigenvalues()[0]);
        }
        for (std::size_t o = 0; o < partition.size(); ++o) {
            const auto& es = blocks[o];
            const auto n = es.eigenvalues().size();
            Eigen::Index g = 0;
            while (g < n && es.eigenvalues()[g] <= rep.min_eigenvalue + kGroundTol)
                ++g;
            rep.degeneracy += static_cast<std::size_t>(g);
            const Eigen::MatrixXcd G = es.eigenvectors().leftCols(g);
            const Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
            const Eigen::MatrixXcd diff = G * G.adjoint() - psi * psi.adjoint();
            rep.projector_distance = std::max(rep.projector_distance, operator_norm(diff));
        }
    } else {
        const std::size_t dim = basis.dimension();
        budget.require(dim * dim, "ground_space_check dense fallback");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(H)};
        rep.min_eigenvalue = es.eigenvalues()[0];
        Eigen::Index g = 0;
        while (g < es.eigenvalues().size() && es.eigenvalues()[g] <= rep.min_eigenvalue + kGroundTol)
            ++g;
        rep.degeneracy = static_cast<std::size_t>(g);
        const Eigen::MatrixXcd G = es.eigenvectors().leftCols(g);
        Eigen::MatrixXcd diff = G * G.adjoint();
        for (std::size_t o = 0; o < partition.size(); ++o) {
            const Eigen::VectorXcd psi = partition.uniform_state(o);
            diff -= psi * psi.adjoint();
        }
        rep.projector_distance = operator_norm(diff);
    }

    if (rep.max_cross_orbit_element > 1e-12)
        rep.failures.push_back("block-diagonal: largest cross-orbit element "
                               + format_double(rep.max_cross_orbit_element));
    if (std::abs(rep.min_eigenvalue) > 1e-10)
        rep.failures.push_back("min-eigenvalue: " + format_double(rep.min_eigenvalue) + " is not 0");
    if (rep.degeneracy != rep.orbit_count)
        rep.failures.push_back("degeneracy: ground space has dimension " + std::to_string(rep.degeneracy) + ", "
                               + std::to_string(rep.orbit_count) + " orbits");
    if (rep.max_orbit_residual > 1e-10)
        rep.failures.push_back("orbit-residual: max ||H psi_B|| = " + format_double(rep.max_orbit_residual));
    if (rep.max_term_residual > 1e-10)
        rep.failures.push_back("term-residual: a single projector term fails to annihilate an orbit state ("
                               + format_double(rep.max_term_residual) + ")");
    if (rep.projector_distance > 1e-9)
        rep.failures.push_back("projector: ground projector differs from the orbit span by "
                               + format_double(rep.projector_distance));
    return rep;
}

} // namespace aqecc
