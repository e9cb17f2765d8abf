#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "aqecc/dense_oracle.hpp"
#include "aqecc/lattice.hpp"

namespace aqecc {

using SparseOperator = Eigen::SparseMatrix<cplx>;

struct LocalTerm {
    int support_len = 1;
    Eigen::MatrixXcd matrix;
};

// Translation-invariant chain: every term acts at every site with periodic wrap.
struct LocalHamiltonian {
    int site_dim = 2;
    int N = 0;
    std::vector<LocalTerm> terms;
    std::string name;

    void validate() const;
};

enum class ModelName { OneLocalSpinHalf, OneLocalSpinOne, HeisenbergPBC, MotzkinPBC };

std::string_view to_string(ModelName name);
// "one-local-half", "one-local-one", "heisenberg", "motzkin"
ModelName parse_model_name(std::string_view text);

LocalHamiltonian build_hamiltonian(ModelName name, int N);

SparseOperator to_sparse(const LocalHamiltonian& h, const Budget& budget = Budget::from_env());

// True when every term commutes with the total magnetization of its support.
bool conserves_magnetization(const LocalHamiltonian& h);

struct DiagonalizeOptions {
    Budget budget = Budget::from_env();
    bool momentum_zero_only = false;
    unsigned threads = 1;
    // Eigenvalues closer than this inside one sector are treated as degenerate
    // and given a canonical basis.
    double degeneracy_tol = 1e-9;
};

// Simultaneous eigenbasis of H, the one-site translation T and (when
// conserved) the magnetization. States are stored per sector block and
// expanded to full vectors on request.
class EigenSolution {
public:
    int N = 0;
    int site_dim = 2;
    std::string hamiltonian_name;
    std::vector<double> energies;                 // ascending up to degeneracy_tol
    std::vector<int> momentum;                    // T|psi> = exp(2 pi i q / N)|psi>
    std::vector<std::optional<int>> magnetization;
    bool momentum_zero_only = false;

    std::size_t size() const { return energies.size(); }
    Eigen::VectorXcd state(std::size_t index) const;
    DenseState dense_state(std::size_t index) const { return {N, site_dim, state(index)}; }
    std::size_t block_count() const { return blocks_.size(); }
    // Sum of block dimensions; equals site_dim^N unless restricted to q = 0.
    std::size_t total_dimension() const;

private:
    friend EigenSolution diagonalize_sectored(const LocalHamiltonian&, const DiagonalizeOptions&);

    struct Block {
        std::optional<int> magnetization;
        int momentum = 0;
        SparseOperator basis;     // full dimension x block dimension, orthonormal columns
        Eigen::MatrixXcd vectors; // block coordinates, one column per eigenstate
    };
    std::vector<Block> blocks_;
    std::vector<std::pair<std::size_t, Eigen::Index>> locator_;
};

EigenSolution diagonalize_sectored(const LocalHamiltonian& h, const DiagonalizeOptions& options = {});

struct SectorExtremes {
    std::optional<int> magnetization;
    std::vector<double> energies;
    std::vector<double> residuals;
};

// Lowest `count` distinct eigenvalues of each magnetization sector by Lanczos with full
// reorthogonalization; for chains beyond the dense budget. Throws
// ConvergenceError when a residual stays above `tolerance`.
std::vector<SectorExtremes> extremal_spectrum(const LocalHamiltonian& h, int count, std::size_t max_dimension,
                                              double tolerance = 1e-9, int max_iterations = 400);

struct MicrocanonicalWindow {
    double center = 0.0;
    double half_width = 0.0;
    std::vector<std::size_t> members; // eigenstate indices, ascending
};

// Members are exactly the states with E in [center - hw, center + hw];
// hw defaults to sqrt(N).
MicrocanonicalWindow make_window(const EigenSolution& sol, double center, std::optional<double> half_width = {});

// Density operator on a chain, either dense, maximally mixed, or a weighted
// mixture of eigenstates of a solution (which must outlive it).
class DensityOperator {
public:
    static DensityOperator dense(int N, int site_dim, Eigen::MatrixXcd rho);
    static DensityOperator maximally_mixed(int N, int site_dim);
    static DensityOperator pure(const DenseState& state);
    static DensityOperator eigen_mixture(const EigenSolution& sol, std::vector<std::size_t> members);

    int N() const { return N_; }
    int site_dim() const { return site_dim_; }
    // Reduced density matrix on 0-based sites (any order, not necessarily contiguous).
    Eigen::MatrixXcd reduce(std::span<const int> sites) const;
    // Several reductions in one pass over the mixture.
    std::vector<Eigen::MatrixXcd> reduce_many(std::span<const std::vector<int>> site_sets) const;
    cplx expectation(const LocalOperator& op) const;
    Eigen::MatrixXcd to_dense(const Budget& budget = Budget::from_env()) const;

private:
    enum class Kind { Dense, MaximallyMixed, Mixture };
    Kind kind_ = Kind::Dense;
    int N_ = 0;
    int site_dim_ = 2;
    Eigen::MatrixXcd rho_;
    std::vector<Eigen::VectorXcd> pure_states_;
    const EigenSolution* solution_ = nullptr;
    std::vector<std::size_t> members_;

    std::size_t mixture_size() const;
    Eigen::VectorXcd mixture_state(std::size_t i) const;
};

// Uniform mixture over the window. Throws EmptyWindowError.
DensityOperator microcanonical_state(const EigenSolution& sol, const MicrocanonicalWindow& window);

struct CorrelationReport {
    double xi = 0.0;
    std::string flag; // "ok", "uncorrelated", "insufficient", "non-decaying"
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    std::vector<int> distances;
    std::vector<double> correlations; // max over the family, normalized by operator norms
};

// Connected two-point functions between site 1 and site 1 + dist for
// dist = 1..floor(N/2), maximized over pairs from the single-site family;
// xi = -1 / slope of log correlation vs distance.
CorrelationReport correlation_length_estimate(const DensityOperator& rho, std::span<const Eigen::MatrixXcd> family);

enum class SamplingMode { Uniform, Stratified };

// Uniform: L distinct members of the window. Stratified: one member from each
// of the windows centred at center + 2 j hw, j = 0..L-1.
std::vector<std::size_t> sample_random_codewords(const EigenSolution& sol, const MicrocanonicalWindow& window,
                                                 int L, SamplingMode mode, std::uint64_t seed);

// max(0, floor(min(c log N, min gap - c log N))).
// N is real so that the formula can be evaluated at non-integer sizes.
int theorem1_distance(std::span<const double> energies, double N, double c_log = 1.0);

} // namespace aqecc
