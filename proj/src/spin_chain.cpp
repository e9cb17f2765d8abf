#include "aqecc/spin_chain.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "aqecc/detail/parallel.hpp"
#include "aqecc/errors.hpp"
#include "aqecc/reporting.hpp"

namespace aqecc {

void LocalHamiltonian::validate() const
{
    if (site_dim != 2 && site_dim != 3)
        throw ShapeError("hamiltonian: site_dim must be 2 or 3");
    if (N < 1)
        throw RangeError("hamiltonian: N must be positive");
    for (const auto& t : terms) {
        if (t.support_len < 1 || t.support_len > N)
            throw ShapeError("hamiltonian: term support must lie in [1, N]");
        const auto dim = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(site_dim), t.support_len));
        if (t.matrix.rows() != dim || t.matrix.cols() != dim)
            throw ShapeError("hamiltonian: term matrix must be site_dim^support_len square");
        if ((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw ShapeError("hamiltonian: term matrix is not Hermitian");
    }
}

std::string_view to_string(ModelName name)
{
    switch (name) {
    case ModelName::OneLocalSpinHalf:
        return "one-local-half";
    case ModelName::OneLocalSpinOne:
        return "one-local-one";
    case ModelName::HeisenbergPBC:
        return "heisenberg";
    case ModelName::MotzkinPBC:
        return "motzkin";
    }
    return "unknown";
}

ModelName parse_model_name(std::string_view text)
{
    for (auto n : {ModelName::OneLocalSpinHalf, ModelName::OneLocalSpinOne, ModelName::HeisenbergPBC,
                   ModelName::MotzkinPBC})
        if (text == to_string(n))
            return n;
    throw FormatError("unknown hamiltonian '" + std::string(text)
                      + "' (expected one-local-half, one-local-one, heisenberg or motzkin)");
}

namespace {

// Two-site projector |v><v| with v = (|a> - |b>)/sqrt 2 on local indices a, b.
Eigen::MatrixXcd antisym_projector(int dim, int a, int b)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[a] = 1.0 / std::numbers::sqrt2;
    v[b] = -1.0 / std::numbers::sqrt2;
    return v * v.adjoint();
}

} // namespace

LocalHamiltonian build_hamiltonian(ModelName name, int N)
{
    LocalHamiltonian h;
    h.N = N;
    h.name = std::string(to_string(name));
    if (N < 1)
        throw RangeError("build_hamiltonian: N must be positive");
    switch (name) {
    case ModelName::OneLocalSpinHalf: {
        // Counts down spins: (1 - sigma^z) / 2.
        h.site_dim = 2;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(0, 0) = 1.0;
        h.terms.push_back({1, m});
        break;
    }
    case ModelName::OneLocalSpinOne: {
        h.site_dim = 3;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
        m(0, 0) = 1.0;
        m(1, 1) = 0.5;
        h.terms.push_back({1, m});
        break;
    }
    case ModelName::HeisenbergPBC: {
        if (N < 3)
            throw RangeError("build_hamiltonian: periodic two-local models need N >= 3");
        h.site_dim = 2;
        const Eigen::MatrixXcd m
            = -0.5 * (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) + kron(pauli_z(), pauli_z()));
        h.terms.push_back({2, m});
        break;
    }
    case ModelName::MotzkinPBC: {
        if (N < 3)
            throw RangeError("build_hamiltonian: periodic two-local models need N >= 3");
        h.site_dim = 3;
        // Digits: d = 0, 0 = 1, u = 2; two-site index 3 * left + right.
        constexpr int d = 0;
        constexpr int z = 1;
        constexpr int u = 2;
        auto idx = [](int l, int r) { return 3 * l + r; };
        const Eigen::MatrixXcd m = antisym_projector(9, idx(u, d), idx(z, z))
            + antisym_projector(9, idx(z, u), idx(u, z)) + antisym_projector(9, idx(z, d), idx(d, z));
        h.terms.push_back({2, m});
        break;
    }
    }
    return h;
}

SparseOperator to_sparse(const LocalHamiltonian& h, const Budget& budget)
{
    h.validate();
    const ChainBasis basis(h.site_dim, h.N);
    budget.require(basis.dimension(), "hamiltonian '" + h.name + "'");
    std::vector<Eigen::Triplet<cplx>> triplets;
    for (const auto& t : h.terms)
        for (int j = 0; j < h.N; ++j)
            embed_local(basis, basis.support_sites(j, t.support_len), t.matrix, triplets);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    SparseOperator H(dim, dim);
    H.setFromTriplets(triplets.begin(), triplets.end());
    H.prune(cplx(0.0, 0.0), 1e-15);
    return H;
}

bool conserves_magnetization(const LocalHamiltonian& h)
{
    h.validate();
    for (const auto& t : h.terms) {
        const ChainBasis local(h.site_dim, t.support_len);
        for (Eigen::Index a = 0; a < t.matrix.cols(); ++a)
            for (Eigen::Index b = 0; b < t.matrix.rows(); ++b)
                if (std::abs(t.matrix(b, a)) > 1e-12
                    && local.magnetization(static_cast<std::size_t>(a))
                        != local.magnetization(static_cast<std::size_t>(b)))
                    return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Sectored diagonalization

namespace {

struct Orbit {
    std::vector<std::size_t> members; // T^j rep for j < period
};

struct BlockTask {
    std::optional<int> magnetization;
    int momentum = 0;
    const std::vector<Orbit>* orbits = nullptr;
    std::vector<std::size_t> columns; // orbit indices compatible with the momentum
};

// Orthonormal basis of span(U) built from the projections of the coordinate
// unit vectors, in index order. Independent of the basis U arrives in.
Eigen::MatrixXcd canonical_span(const Eigen::MatrixXcd& U)
{
    const Eigen::Index n = U.rows();
    const Eigen::Index g = U.cols();
    Eigen::MatrixXcd out(n, g);
    Eigen::Index found = 0;
    for (Eigen::Index i = 0; i < n && found < g; ++i) {
        Eigen::VectorXcd w = U * U.row(i).adjoint();
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index k = 0; k < found; ++k)
                w -= out.col(k) * out.col(k).dot(w);
        const double norm = w.norm();
        if (norm > 1e-6)
            out.col(found++) = w / norm;
    }
    if (found != g)
        throw ConvergenceError("degenerate subspace canonicalization lost rank");
    return out;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > 1e-10) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            v[i] = std::abs(v[i]);
            return;
        }
}

} // namespace

Eigen::VectorXcd EigenSolution::state(std::size_t index) const
{
    if (index >= locator_.size())
        throw RangeError("eigenstate index " + std::to_string(index) + " out of range");
    const auto& [b, c] = locator_[index];
    const Block& block = blocks_[b];
    return block.basis * block.vectors.col(c);
}

std::size_t EigenSolution::total_dimension() const
{
    std::size_t total = 0;
    for (const auto& b : blocks_)
        total += static_cast<std::size_t>(b.basis.cols());
    return total;
}

EigenSolution diagonalize_sectored(const LocalHamiltonian& h, const DiagonalizeOptions& options)
{
    h.validate();
    const ChainBasis basis(h.site_dim, h.N);
    options.budget.require(basis.dimension(), "diagonalize_sectored");
    const SparseOperator H = to_sparse(h, options.budget);
    const bool conserved = conserves_magnetization(h);
    const std::size_t dim = basis.dimension();
    const int N = h.N;

    // Translation orbits per magnetization group, representatives ascending.
    std::map<int, std::vector<Orbit>> groups;
    {
        std::vector<bool> seen(dim, false);
        for (std::size_t i = 0; i < dim; ++i) {
            if (seen[i])
                continue;
            Orbit o;
            std::size_t s = i;
            do {
                seen[s] = true;
                o.members.push_back(s);
                s = basis.translate(s);
            } while (s != i);
            groups[conserved ? basis.magnetization(i) : 0].push_back(std::move(o));
        }
    }

    std::vector<BlockTask> tasks;
    for (const auto& [m, orbits] : groups) {
        for (int q = 0; q < (options.momentum_zero_only ? 1 : N); ++q) {
            BlockTask t;
            if (conserved)
                t.magnetization = m;
            t.momentum = q;
            t.orbits = &orbits;
            for (std::size_t o = 0; o < orbits.size(); ++o)
                if ((static_cast<long>(q) * static_cast<long>(orbits[o].members.size())) % N == 0)
                    t.columns.push_back(o);
            if (!t.columns.empty())
                tasks.push_back(std::move(t));
        }
    }

    EigenSolution sol;
    sol.N = N;
    sol.site_dim = h.site_dim;
    sol.hamiltonian_name = h.name;
    sol.momentum_zero_only = options.momentum_zero_only;
    sol.blocks_.resize(tasks.size());
    std::vector<Eigen::VectorXd> block_energies(tasks.size());

    detail::parallel_for(tasks.size(), options.threads, [&](std::size_t ti) {
        const BlockTask& t = tasks[ti];
        const auto cols = static_cast<Eigen::Index>(t.columns.size());
        std::vector<Eigen::Triplet<cplx>> trip;
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Orbit& o = (*t.orbits)[t.columns[static_cast<std::size_t>(c)]];
            const double period = static_cast<double>(o.members.size());
            for (std::size_t j = 0; j < o.members.size(); ++j) {
                // Bloch sum: T^j carries the phase exp(-2 pi i q j / N).
                const double angle = -2.0 * std::numbers::pi * t.momentum * static_cast<double>(j) / N;
                trip.emplace_back(static_cast<Eigen::Index>(o.members[j]), c,
                                  std::polar(1.0 / std::sqrt(period), angle));
            }
        }
        EigenSolution::Block& block = sol.blocks_[ti];
        block.magnetization = t.magnetization;
        block.momentum = t.momentum;
        block.basis.resize(static_cast<Eigen::Index>(dim), cols);
        block.basis.setFromTriplets(trip.begin(), trip.end());

        const SparseOperator HV = H * block.basis;
        Eigen::MatrixXcd Hb = Eigen::MatrixXcd(SparseOperator(block.basis.adjoint()) * HV);
        Hb = 0.5 * (Hb + Hb.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hb);
        if (es.info() != Eigen::Success)
            throw ConvergenceError("block eigensolver failed");

        Eigen::MatrixXcd vecs = es.eigenvectors();
        const Eigen::VectorXd& vals = es.eigenvalues();
        for (Eigen::Index start = 0; start < cols;) {
            Eigen::Index end = start + 1;
            while (end < cols && vals[end] - vals[end - 1] <= options.degeneracy_tol)
                ++end;
            if (end - start > 1)
                vecs.middleCols(start, end - start) = canonical_span(vecs.middleCols(start, end - start));
            start = end;
        }
        Eigen::VectorXd energies(cols);
        for (Eigen::Index c = 0; c < cols; ++c) {
            fix_phase(vecs.col(c));
            energies[c] = vecs.col(c).dot(Hb * vecs.col(c)).real();
        }
        block.vectors = std::move(vecs);
        block_energies[ti] = std::move(energies);
    });

    struct Entry {
        double energy;
        std::size_t block;
        Eigen::Index column;
    };
    std::vector<Entry> entries;
    for (std::size_t b = 0; b < tasks.size(); ++b)
        for (Eigen::Index c = 0; c < block_energies[b].size(); ++c)
            entries.push_back({block_energies[b][c], b, c});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.energy, a.block, a.column) < std::tie(b.energy, b.block, b.column);
    });
    // Near-degenerate energies are ordered by momentum, then magnetization.
    auto key = [&](const Entry& e) {
        const auto& blk = sol.blocks_[e.block];
        return std::make_tuple(blk.momentum, blk.magnetization.value_or(std::numeric_limits<int>::min()), e.block,
                               e.column);
    };
    for (std::size_t start = 0; start < entries.size();) {
        std::size_t end = start + 1;
        while (end < entries.size() && entries[end].energy - entries[end - 1].energy <= options.degeneracy_tol)
            ++end;
        std::sort(entries.begin() + static_cast<long>(start), entries.begin() + static_cast<long>(end),
                  [&](const Entry& a, const Entry& b) { return key(a) < key(b); });
        start = end;
    }

    for (const auto& e : entries) {
        const auto& blk = sol.blocks_[e.block];
        sol.energies.push_back(e.energy);
        sol.momentum.push_back(blk.momentum);
        sol.magnetization.push_back(blk.magnetization);
        sol.locator_.emplace_back(e.block, e.column);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Lanczos for extremal eigenvalues

namespace {

SectorExtremes lanczos_lowest(const SparseOperator& H, int count, double tol, int max_iter, std::uint64_t seed)
{
    SectorExtremes out;
    const Eigen::Index n = H.rows();
    const int want = static_cast<int>(std::min<Eigen::Index>(count, n));
    if (n <= 256) {
        // Distinct levels, as the Krylov path reports.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(H), Eigen::EigenvaluesOnly};
        for (Eigen::Index i = 0; i < n && static_cast<int>(out.energies.size()) < want; ++i) {
            const double e = es.eigenvalues()[i];
            if (!out.energies.empty() && e - out.energies.back() <= tol * std::max(1.0, std::abs(e)))
                continue;
            out.energies.push_back(e);
            out.residuals.push_back(0.0);
        }
        return out;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = cplx(gauss(rng), gauss(rng));
    v.normalize();

    std::vector<Eigen::VectorXcd> Q{v};
    std::vector<double> alpha;
    std::vector<double> beta;
    const int limit = static_cast<int>(std::min<Eigen::Index>(max_iter, n));
    for (int j = 0; j < limit; ++j) {
        Eigen::VectorXcd w = H * Q[static_cast<std::size_t>(j)];
        const double a = Q[static_cast<std::size_t>(j)].dot(w).real();
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : Q)
                w -= q * q.dot(w);
        const double b = w.norm();
        const bool exhausted = b < 1e-12;
        const bool check = exhausted || j + 1 == limit || (j + 1) % 10 == 0;
        if (check && static_cast<int>(alpha.size()) >= want) {
            const Eigen::Map<const Eigen::VectorXd> diag(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
            const Eigen::Map<const Eigen::VectorXd> sub(beta.data(), static_cast<Eigen::Index>(beta.size()));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ts;
            ts.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const Eigen::Index last = static_cast<Eigen::Index>(alpha.size()) - 1;
            bool converged = true;
            std::vector<double> res(static_cast<std::size_t>(want));
            for (int i = 0; i < want; ++i) {
                res[static_cast<std::size_t>(i)] = b * std::abs(ts.eigenvectors()(last, i));
                if (res[static_cast<std::size_t>(i)] > tol * std::max(1.0, std::abs(ts.eigenvalues()[i])))
                    converged = false;
            }
            if (converged || exhausted) {
                for (int i = 0; i < want; ++i)
                    out.energies.push_back(ts.eigenvalues()[i]);
                out.residuals = std::move(res);
                return out;
            }
            if (j + 1 == limit) {
                std::string msg = "lanczos did not converge after " + std::to_string(limit) + " steps; residuals:";
                for (double r : res)
                    msg += " " + format_double(r);
                throw ConvergenceError(msg);
            }
        }
        beta.push_back(b);
        Q.push_back(w / b);
    }
    throw ConvergenceError("lanczos: iteration budget exhausted");
}

} // namespace

std::vector<SectorExtremes> extremal_spectrum(const LocalHamiltonian& h, int count, std::size_t max_dimension,
                                              double tolerance, int max_iterations)
{
    if (count < 1)
        throw DomainError("extremal_spectrum: count must be positive");
    Budget budget;
    budget.max_bytes = max_dimension * sizeof(cplx);
    const SparseOperator H = to_sparse(h, budget);
    const ChainBasis basis(h.site_dim, h.N);
    const bool conserved = conserves_magnetization(h);

    std::map<int, std::vector<Eigen::Index>> sectors;
    for (std::size_t i = 0; i < basis.dimension(); ++i)
        sectors[conserved ? basis.magnetization(i) : 0].push_back(static_cast<Eigen::Index>(i));

    std::vector<Eigen::Index> position(basis.dimension(), -1);
    std::vector<SectorExtremes> result;
    for (const auto& [m, members] : sectors) {
        for (std::size_t k = 0; k < members.size(); ++k)
            position[static_cast<std::size_t>(members[k])] = static_cast<Eigen::Index>(k);
        std::vector<Eigen::Triplet<cplx>> trip;
        for (std::size_t k = 0; k < members.size(); ++k)
            for (SparseOperator::InnerIterator it(H, members[k]); it; ++it) {
                const Eigen::Index r = position[static_cast<std::size_t>(it.row())];
                if (r >= 0 && (!conserved || basis.magnetization(static_cast<std::size_t>(it.row())) == m))
                    trip.emplace_back(r, static_cast<Eigen::Index>(k), it.value());
            }
        const auto n = static_cast<Eigen::Index>(members.size());
        SparseOperator Hs(n, n);
        Hs.setFromTriplets(trip.begin(), trip.end());
        SectorExtremes ext = lanczos_lowest(Hs, count, tolerance, max_iterations,
                                            0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(m + 1000));
        if (conserved)
            ext.magnetization = m;
        result.push_back(std::move(ext));
        for (auto i : members)
            position[static_cast<std::size_t>(i)] = -1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Windows and density operators

MicrocanonicalWindow make_window(const EigenSolution& sol, double center, std::optional<double> half_width)
{
    MicrocanonicalWindow w;
    w.center = center;
    w.half_width = half_width.value_or(std::sqrt(static_cast<double>(sol.N)));
    if (!(w.half_width >= 0.0))
        throw DomainError("window half width must be non-negative");
    for (std::size_t i = 0; i < sol.size(); ++i)
        if (sol.energies[i] >= center - w.half_width && sol.energies[i] <= center + w.half_width)
            w.members.push_back(i);
    return w;
}

DensityOperator DensityOperator::dense(int N, int site_dim, Eigen::MatrixXcd rho)
{
    const ChainBasis basis(site_dim, N);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    if (rho.rows() != dim || rho.cols() != dim)
        throw ShapeError("density matrix does not match the chain");
    DensityOperator d;
    d.kind_ = Kind::Dense;
    d.N_ = N;
    d.site_dim_ = site_dim;
    d.rho_ = std::move(rho);
    return d;
}

DensityOperator DensityOperator::maximally_mixed(int N, int site_dim)
{
    const ChainBasis basis(site_dim, N);
    DensityOperator d;
    d.kind_ = Kind::MaximallyMixed;
    d.N_ = N;
    d.site_dim_ = site_dim;
    return d;
}

DensityOperator DensityOperator::pure(const DenseState& state)
{
    const ChainBasis basis = state.basis();
    if (state.amplitudes.size() != static_cast<Eigen::Index>(basis.dimension()))
        throw ShapeError("state length does not match the chain");
    DensityOperator d;
    d.kind_ = Kind::Mixture;
    d.N_ = state.N;
    d.site_dim_ = state.site_dim;
    d.pure_states_.push_back(state.amplitudes);
    return d;
}

DensityOperator DensityOperator::eigen_mixture(const EigenSolution& sol, std::vector<std::size_t> members)
{
    if (members.empty())
        throw EmptyWindowError("mixture over an empty set of eigenstates");
    for (auto i : members)
        if (i >= sol.size())
            throw RangeError("mixture member out of range");
    DensityOperator d;
    d.kind_ = Kind::Mixture;
    d.N_ = sol.N;
    d.site_dim_ = sol.site_dim;
    d.solution_ = &sol;
    d.members_ = std::move(members);
    return d;
}

std::size_t DensityOperator::mixture_size() const
{
    return solution_ != nullptr ? members_.size() : pure_states_.size();
}

Eigen::VectorXcd DensityOperator::mixture_state(std::size_t i) const
{
    return solution_ != nullptr ? solution_->state(members_[i]) : pure_states_[i];
}

std::vector<Eigen::MatrixXcd> DensityOperator::reduce_many(std::span<const std::vector<int>> site_sets) const
{
    const ChainBasis basis(site_dim_, N_);
    std::vector<SiteSplit> splits;
    splits.reserve(site_sets.size());
    for (const auto& s : site_sets)
        splits.emplace_back(basis, s);

    std::vector<Eigen::MatrixXcd> out;
    out.reserve(site_sets.size());
    switch (kind_) {
    case Kind::MaximallyMixed:
        for (const auto& sp : splits) {
            const auto ld = static_cast<Eigen::Index>(sp.local_dimension());
            out.push_back(Eigen::MatrixXcd::Identity(ld, ld) / static_cast<double>(ld));
        }
        break;
    case Kind::Dense:
        for (const auto& sp : splits)
            out.push_back(sp.reduce(rho_));
        break;
    case Kind::Mixture: {
        for (const auto& sp : splits) {
            const auto ld = static_cast<Eigen::Index>(sp.local_dimension());
            out.push_back(Eigen::MatrixXcd::Zero(ld, ld));
        }
        const std::size_t count = mixture_size();
        for (std::size_t i = 0; i < count; ++i) {
            const Eigen::VectorXcd psi = mixture_state(i);
            for (std::size_t s = 0; s < splits.size(); ++s)
                out[s] += splits[s].reduce(psi);
        }
        for (auto& m : out)
            m /= static_cast<double>(count);
        break;
    }
    }
    return out;
}

Eigen::MatrixXcd DensityOperator::reduce(std::span<const int> sites) const
{
    const std::vector<int> set(sites.begin(), sites.end());
    return reduce_many(std::span<const std::vector<int>>(&set, 1)).front();
}

cplx DensityOperator::expectation(const LocalOperator& op) const
{
    op.check_fits(N_, site_dim_);
    const ChainBasis basis(site_dim_, N_);
    const auto rho = reduce(basis.support_sites(op.support_start - 1, op.support_len));
    return (rho * op.matrix).trace();
}

Eigen::MatrixXcd DensityOperator::to_dense(const Budget& budget) const
{
    const ChainBasis basis(site_dim_, N_);
    const std::size_t dim = basis.dimension();
    budget.require(dim * dim, "dense density operator");
    const auto n = static_cast<Eigen::Index>(dim);
    switch (kind_) {
    case Kind::Dense:
        return rho_;
    case Kind::MaximallyMixed:
        return Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    case Kind::Mixture:
        break;
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    const std::size_t count = mixture_size();
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::VectorXcd psi = mixture_state(i);
        rho.noalias() += psi * psi.adjoint();
    }
    return rho / static_cast<double>(count);
}

DensityOperator microcanonical_state(const EigenSolution& sol, const MicrocanonicalWindow& window)
{
    if (window.members.empty())
        throw EmptyWindowError("microcanonical window [" + format_double(window.center - window.half_width) + ", "
                               + format_double(window.center + window.half_width) + "] holds no eigenstates");
    return DensityOperator::eigen_mixture(sol, window.members);
}

// ---------------------------------------------------------------------------
// Correlations

CorrelationReport correlation_length_estimate(const DensityOperator& rho, std::span<const Eigen::MatrixXcd> family)
{
    const int N = rho.N();
    const int D = rho.site_dim();
    const int max_dist = N / 2;
    if (max_dist < 4)
        throw InsufficientDataError("correlation_length_estimate: N = " + std::to_string(N)
                                    + " gives fewer than 4 distinct separations");
    if (family.empty())
        throw ShapeError("correlation_length_estimate: empty operator family");
    std::vector<double> norms;
    for (const auto& op : family) {
        if (op.rows() != D || op.cols() != D)
            throw ShapeError("correlation_length_estimate: family operators must be single-site");
        norms.push_back(operator_norm(op));
    }

    std::vector<std::vector<int>> pairs;
    for (int dist = 1; dist <= max_dist; ++dist)
        pairs.push_back({0, dist});
    const auto rdms = rho.reduce_many(pairs);

    CorrelationReport rep;
    for (int dist = 1; dist <= max_dist; ++dist) {
        const Eigen::MatrixXcd& r2 = rdms[static_cast<std::size_t>(dist - 1)];
        Eigen::MatrixXcd ra = Eigen::MatrixXcd::Zero(D, D);
        Eigen::MatrixXcd rb = Eigen::MatrixXcd::Zero(D, D);
        for (int a = 0; a < D; ++a)
            for (int a2 = 0; a2 < D; ++a2)
                for (int b = 0; b < D; ++b) {
                    ra(a, a2) += r2(a * D + b, a2 * D + b);
                    rb(a, a2) += r2(b * D + a, b * D + a2);
                }
        double best = 0.0;
        for (std::size_t x = 0; x < family.size(); ++x)
            for (std::size_t z = 0; z < family.size(); ++z) {
                if (norms[x] == 0.0 || norms[z] == 0.0)
                    continue;
                const cplx joint = (r2 * kron(family[x], family[z])).trace();
                const cplx sep = (ra * family[x]).trace() * (rb * family[z]).trace();
                best = std::max(best, std::abs(joint - sep) / (norms[x] * norms[z]));
            }
        rep.distances.push_back(dist);
        rep.correlations.push_back(best);
    }

    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < rep.distances.size(); ++i)
        if (rep.correlations[i] > 1e-12) {
            x.push_back(rep.distances[i]);
            y.push_back(std::log(rep.correlations[i]));
        }
    if (x.empty()) {
        rep.flag = "uncorrelated";
        return rep;
    }
    if (x.size() < 2) {
        rep.flag = "insufficient";
        return rep;
    }
    const LineFit fit = fit_line(x, y);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.residual = fit.rms_residual;
    if (fit.slope < 0.0) {
        rep.xi = -1.0 / fit.slope;
        rep.flag = "ok";
    } else {
        rep.xi = std::numeric_limits<double>::infinity();
        rep.flag = "non-decaying";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<std::size_t> sample_random_codewords(const EigenSolution& sol, const MicrocanonicalWindow& window,
                                                 int L, SamplingMode mode, std::uint64_t seed)
{
    if (L < 1)
        throw PopulationError("sample_random_codewords: L must be positive");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> draw;
    if (mode == SamplingMode::Uniform) {
        if (window.members.size() < static_cast<std::size_t>(L))
            throw PopulationError("window holds " + std::to_string(window.members.size())
                                  + " eigenstates, fewer than L = " + std::to_string(L));
        std::sample(window.members.begin(), window.members.end(), std::back_inserter(draw),
                    static_cast<std::ptrdiff_t>(L), rng);
        return draw;
    }

    for (int j = 0; j < L; ++j) {
        const MicrocanonicalWindow wj
            = make_window(sol, window.center + 2.0 * j * window.half_width, window.half_width);
        std::vector<std::size_t> free;
        for (auto i : wj.members)
            if (std::find(draw.begin(), draw.end(), i) == draw.end())
                free.push_back(i);
        if (free.empty())
            throw PopulationError("stratified window " + std::to_string(j) + " centred at "
                                  + format_double(wj.center) + " has no unused eigenstate");
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        draw.push_back(free[pick(rng)]);
    }
    return draw;
}

int theorem1_distance(std::span<const double> energies, double N, double c_log)
{
    if (energies.size() < 2)
        throw DomainError("theorem1_distance: need at least two energies");
    if (!(N > 1.0))
        throw DomainError("theorem1_distance: N must exceed 1");
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < energies.size(); ++p)
        for (std::size_t q = p + 1; q < energies.size(); ++q)
            gap = std::min(gap, std::abs(energies[p] - energies[q]));
    const double log_term = c_log * std::log(N);
    const double value = std::min(log_term, gap - log_term);
    // Absorb rounding so that exact integers like log(e^2) floor to themselves.
    return std::max(0, static_cast<int>(std::floor(value + 1e-9)));
}

} // namespace aqecc
