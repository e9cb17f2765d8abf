#include "aqecc/eth.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>

#include "aqecc/detail/parallel.hpp"
#include "aqecc/errors.hpp"

namespace aqecc {

namespace {

double median_of(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void require_members(const EigenSolution& sol, const MicrocanonicalWindow& window, const char* what)
{
    if (window.members.empty())
        throw EmptyWindowError(std::string(what) + ": window holds no eigenstates");
    for (auto i : window.members)
        if (i >= sol.size())
            throw RangeError(std::string(what) + ": window member out of range");
}

ScanReport make_report(const char* kind, const EigenSolution& sol, const MicrocanonicalWindow& window,
                       std::string observable)
{
    ScanReport r;
    r.kind = kind;
    r.model = sol.hamiltonian_name;
    r.N = sol.N;
    r.observable = std::move(observable);
    r.window_center = window.center;
    r.window_half_width = window.half_width;
    r.window_population = window.members.size();
    return r;
}

std::string describe(const LocalOperator& op)
{
    return "local operator at sites " + std::to_string(op.support_start) + ".."
        + std::to_string(op.support_start + op.support_len - 1);
}

// Columns are the member eigenstates.
Eigen::MatrixXcd member_states(const EigenSolution& sol, std::span<const std::size_t> members)
{
    const auto dim = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(sol.site_dim), sol.N));
    Eigen::MatrixXcd S(dim, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c)
        S.col(static_cast<Eigen::Index>(c)) = sol.state(members[c]);
    return S;
}

Eigen::MatrixXcd applied(const LocalOperator& op, const EigenSolution& sol, const Eigen::MatrixXcd& S)
{
    op.check_fits(sol.N, sol.site_dim);
    const ChainBasis basis(sol.site_dim, sol.N);
    const auto sites = basis.support_sites(op.support_start - 1, op.support_len);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(S.rows(), S.cols());
    for (Eigen::Index c = 0; c < S.cols(); ++c) {
        const Eigen::VectorXcd in = S.col(c);
        Eigen::VectorXcd o = Eigen::VectorXcd::Zero(S.rows());
        apply_local(basis, sites, op.matrix, in, o);
        out.col(c) = o;
    }
    return out;
}

std::vector<double> diagonal_expectations(const EigenSolution& sol, std::span<const std::size_t> members,
                                          const LocalOperator& op)
{
    const Eigen::MatrixXcd S = member_states(sol, members);
    const Eigen::MatrixXcd OS = applied(op, sol, S);
    std::vector<double> out(members.size());
    for (std::size_t c = 0; c < members.size(); ++c)
        out[c] = S.col(static_cast<Eigen::Index>(c)).dot(OS.col(static_cast<Eigen::Index>(c))).real();
    return out;
}

} // namespace

ScanStats compute_stats(const std::vector<ScanRow>& rows, double threshold)
{
    ScanStats s;
    s.count = rows.size();
    s.threshold = threshold;
    if (rows.empty())
        return s;
    s.defined = true;
    std::vector<double> v;
    v.reserve(rows.size());
    std::size_t above = 0;
    for (const auto& r : rows) {
        v.push_back(r.value);
        if (r.value > threshold)
            ++above;
    }
    s.max = *std::max_element(v.begin(), v.end());
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    s.median = median_of(std::move(v));
    s.exceedance = static_cast<double>(above) / static_cast<double>(rows.size());
    return s;
}

ScanReport diagonal_eth_scan(const EigenSolution& sol, const MicrocanonicalWindow& window, const LocalOperator& op,
                             const ScanOptions& options)
{
    require_members(sol, window, "diagonal_eth_scan");
    ScanReport rep = make_report("diagonal", sol, window, describe(op));
    const auto values = diagonal_expectations(sol, window.members, op);
    for (std::size_t i = 0; i + 1 < window.members.size(); ++i) {
        const auto a = window.members[i];
        const auto b = window.members[i + 1];
        rep.rows.push_back({a, b, sol.energies[a], sol.energies[b], std::abs(values[i] - values[i + 1])});
    }
    rep.stats = compute_stats(rep.rows, options.exceedance_threshold);
    return rep;
}

Eigen::MatrixXd offdiagonal_magnitudes(const EigenSolution& sol, std::span<const std::size_t> members,
                                       const LocalOperator& op)
{
    const Eigen::MatrixXcd S = member_states(sol, members);
    const Eigen::MatrixXcd OS = applied(op, sol, S);
    return (S.adjoint() * OS).cwiseAbs();
}

ScanReport offdiagonal_decay_scan(const EigenSolution& sol, const MicrocanonicalWindow& window,
                                  const LocalOperator& op, const ScanOptions& options)
{
    require_members(sol, window, "offdiagonal_decay_scan");
    if (options.bins < 2)
        throw DomainError("offdiagonal_decay_scan: need at least two bins");
    ScanReport rep = make_report("offdiagonal", sol, window, describe(op));
    const Eigen::MatrixXd mags = offdiagonal_magnitudes(sol, window.members, op);
    const std::size_t n = window.members.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            const auto a = window.members[k];
            const auto b = window.members[l];
            rep.rows.push_back({a, b, sol.energies[a], sol.energies[b],
                                mags(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))});
        }
    rep.stats = compute_stats(rep.rows, options.exceedance_threshold);

    // Equal-population bins along the gap axis over the nonzero elements.
    std::vector<std::pair<double, double>> points;
    for (const auto& r : rep.rows)
        if (r.value > 1e-12)
            points.emplace_back(std::abs(r.energy_a - r.energy_b), std::log(r.value));
    std::sort(points.begin(), points.end());
    const auto bins = static_cast<std::size_t>(options.bins);
    if (points.size() >= bins) {
        for (std::size_t b = 0; b < bins; ++b) {
            const std::size_t lo = b * points.size() / bins;
            const std::size_t hi = (b + 1) * points.size() / bins;
            std::vector<double> gaps;
            std::vector<double> logs;
            for (std::size_t i = lo; i < hi; ++i) {
                gaps.push_back(points[i].first);
                logs.push_back(points[i].second);
            }
            rep.bins.emplace_back(median_of(gaps), median_of(logs));
        }
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& [g, v] : rep.bins) {
            x.push_back(g);
            y.push_back(v);
        }
        if (*std::max_element(x.begin(), x.end()) > *std::min_element(x.begin(), x.end()))
            rep.fit = fit_line(x, y);
    }
    return rep;
}

double weak_eth_fraction(const EigenSolution& sol, const MicrocanonicalWindow& window, const LocalOperator& op,
                         double delta)
{
    require_members(sol, window, "weak_eth_fraction");
    const auto values = diagonal_expectations(sol, window.members, op);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    std::size_t hits = 0;
    for (double v : values)
        if (v - mean >= delta)
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

ScanReport rdm_distance_pairs(const EigenSolution& sol, const MicrocanonicalWindow& window, int d,
                              std::size_t sample_pairs, std::uint64_t seed, const ScanOptions& options)
{
    require_members(sol, window, "rdm_distance_pairs");
    if (window.members.size() < 2)
        throw InsufficientDataError("rdm_distance_pairs: window needs at least two eigenstates");
    if (d < 1 || d > sol.N)
        throw RangeError("rdm_distance_pairs: support length must lie in [1, N]");
    const std::size_t local_dim = ipow(static_cast<std::size_t>(sol.site_dim), d);
    options.budget.require(local_dim * local_dim, "rdm_distance_pairs reduced matrix");
    options.budget.require(ipow(static_cast<std::size_t>(sol.site_dim), sol.N), "rdm_distance_pairs state");

    ScanReport rep = make_report("rdm_distance", sol, window, "sites 1.." + std::to_string(d));
    const std::size_t n = window.members.size();
    const std::size_t total = n * (n - 1) / 2;
    std::vector<std::size_t> chosen;
    if (sample_pairs >= total) {
        chosen.resize(total);
        std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    } else {
        std::vector<std::size_t> all(total);
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::mt19937_64 rng(seed);
        std::sample(all.begin(), all.end(), std::back_inserter(chosen), static_cast<std::ptrdiff_t>(sample_pairs),
                    rng);
    }
    // Pair number p enumerates (k, l), k < l, row by row.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(chosen.size());
    {
        std::size_t p = 0;
        std::size_t next = 0;
        for (std::size_t k = 0; k < n && next < chosen.size(); ++k)
            for (std::size_t l = k + 1; l < n && next < chosen.size(); ++l, ++p)
                if (chosen[next] == p) {
                    pairs.emplace_back(k, l);
                    ++next;
                }
    }

    std::vector<bool> needed(n, false);
    for (const auto& [k, l] : pairs)
        needed[k] = needed[l] = true;
    const ChainBasis basis(sol.site_dim, sol.N);
    const auto sites = basis.support_sites(0, d);
    const SiteSplit split(basis, sites);
    std::vector<Eigen::MatrixXcd> rdms(n);
    detail::parallel_for(n, options.threads, [&](std::size_t k) {
        if (needed[k])
            rdms[k] = split.reduce(sol.state(window.members[k]));
    });

    rep.rows.resize(pairs.size());
    detail::parallel_for(pairs.size(), options.threads, [&](std::size_t i) {
        const auto [k, l] = pairs[i];
        const auto a = window.members[k];
        const auto b = window.members[l];
        rep.rows[i] = {a, b, sol.energies[a], sol.energies[b], trace_norm(rdms[k] - rdms[l])};
    });
    rep.stats = compute_stats(rep.rows, options.exceedance_threshold);
    return rep;
}

Theorem1Trial theorem1_trial(const EigenSolution& sol, const MicrocanonicalWindow& window, int L, int d,
                             SamplingMode mode, std::uint64_t seed, double c_log)
{
    Theorem1Trial t;
    t.indices = sample_random_codewords(sol, window, L, mode, seed);
    for (auto i : t.indices)
        t.energies.push_back(sol.energies[i]);
    t.distance = t.indices.size() >= 2 ? theorem1_distance(t.energies, sol.N, c_log) : 0;
    std::vector<DenseState> codewords;
    for (auto i : t.indices)
        codewords.push_back(sol.dense_state(i));
    const auto basis = local_operator_basis(sol.site_dim, d);
    t.epsilon = kl_epsilon_oracle(codewords, basis).epsilon;
    t.epsilon_max = t.epsilon.maxCoeff();
    return t;
}

} // namespace aqecc
