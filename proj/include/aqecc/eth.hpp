#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aqecc/dense_oracle.hpp"
#include "aqecc/reporting.hpp"
#include "aqecc/spin_chain.hpp"

namespace aqecc {

struct ScanRow {
    std::size_t index_a = 0;
    std::size_t index_b = 0;
    double energy_a = 0.0;
    double energy_b = 0.0;
    double value = 0.0;
};

struct ScanStats {
    std::size_t count = 0;
    bool defined = false; // false when there are no rows
    double median = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double threshold = 0.0;
    double exceedance = 0.0; // fraction of rows with value > threshold
};

ScanStats compute_stats(const std::vector<ScanRow>& rows, double threshold);

struct ScanOptions {
    double exceedance_threshold = 0.1;
    int bins = 8;
    unsigned threads = 1;
    Budget budget = Budget::from_env();
};

struct ScanReport {
    std::string kind;
    std::string model;
    int N = 0;
    std::string observable;
    double window_center = 0.0;
    double window_half_width = 0.0;
    std::size_t window_population = 0;
    std::vector<ScanRow> rows;
    ScanStats stats;
    // Off-diagonal scans: median (gap, log value) per equal-population bin and
    // the line through them.
    std::vector<std::pair<double, double>> bins;
    std::optional<LineFit> fit;
};

// |<E_l|O|E_l> - <E_l+1|O|E_l+1>| over consecutive window members.
ScanReport diagonal_eth_scan(const EigenSolution& sol, const MicrocanonicalWindow& window, const LocalOperator& op,
                             const ScanOptions& options = {});

// (|E_k - E_l|, |<E_k|O|E_l>|) over all member pairs k < l, with a fit of the
// binned log magnitudes against the gap.
ScanReport offdiagonal_decay_scan(const EigenSolution& sol, const MicrocanonicalWindow& window,
                                  const LocalOperator& op, const ScanOptions& options = {});

// |<E_k|O|E_l>| for all member pairs, in member order.
Eigen::MatrixXd offdiagonal_magnitudes(const EigenSolution& sol, std::span<const std::size_t> members,
                                       const LocalOperator& op);

// Fraction of members whose expectation of O - <O>_window exceeds delta.
double weak_eth_fraction(const EigenSolution& sol, const MicrocanonicalWindow& window, const LocalOperator& op,
                         double delta);

// Trace distances between reduced states on sites 1..d for seeded distinct
// member pairs (all pairs when sample_pairs covers them).
ScanReport rdm_distance_pairs(const EigenSolution& sol, const MicrocanonicalWindow& window, int d,
                              std::size_t sample_pairs, std::uint64_t seed, const ScanOptions& options = {});

struct Theorem1Trial {
    std::vector<std::size_t> indices;
    std::vector<double> energies;
    int distance = 0; // from theorem1_distance
    double epsilon_max = 0.0;
    Eigen::MatrixXd epsilon;
};

// Draws L eigenstates from the window and measures the Knill-Laflamme
// deviation over the d-site operator basis at sites 1..d.
Theorem1Trial theorem1_trial(const EigenSolution& sol, const MicrocanonicalWindow& window, int L, int d,
                             SamplingMode mode, std::uint64_t seed, double c_log = 1.0);

} // namespace aqecc
