#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace aqecc {

using cplx = std::complex<double>;

// Hard cap on dense state-vector storage. The default admits 2^14 spin-1/2
// amplitudes and 3^9 spin-1 amplitudes; AQECC_BUDGET_BYTES overrides it.
struct Budget {
    static constexpr std::size_t kDefaultBytes = 16 * 19683;

    std::size_t max_bytes = kDefaultBytes;

    static Budget from_env();
    std::size_t max_dimension() const { return max_bytes / sizeof(cplx); }
    bool admits(std::size_t dimension) const { return dimension <= max_dimension(); }
    // Throws BudgetError naming `what` when dimension exceeds the cap.
    void require(std::size_t dimension, std::string_view what) const;
};

// Saturating D^n.
std::size_t ipow(std::size_t base, int exponent);

// Product basis of N sites of dimension D. Site 0 (site 1 in the 1-based
// convention) is the most significant base-D digit. Digits map to spin values
// {0 -> -1, 1 -> +1} for D = 2 and {0 -> -1, 1 -> 0, 2 -> +1} for D = 3.
class ChainBasis {
public:
    ChainBasis(int site_dim, int num_sites);

    int site_dim() const { return site_dim_; }
    int num_sites() const { return num_sites_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t place(int site) const { return place_[static_cast<std::size_t>(site)]; }

    int digit(std::size_t index, int site) const
    {
        return static_cast<int>((index / place_[static_cast<std::size_t>(site)]) % static_cast<std::size_t>(site_dim_));
    }
    int spin_value(int digit) const { return site_dim_ == 2 ? 2 * digit - 1 : digit - 1; }
    int magnetization(std::size_t index) const;
    // T: the content of site j moves to site j+1, the last site wraps to the first.
    std::size_t translate(std::size_t index) const;

    // Site list of a contiguous wrapped support starting at 0-based `start`.
    std::vector<int> support_sites(int start, int length) const;

private:
    int site_dim_;
    int num_sites_;
    std::size_t dimension_;
    std::vector<std::size_t> place_;
};

// out += (matrix on `sites`, identity elsewhere) * in. The first listed site
// is the most significant digit of the local index.
void apply_local(const ChainBasis& basis, std::span<const int> sites, const Eigen::MatrixXcd& matrix,
                 const Eigen::VectorXcd& in, Eigen::VectorXcd& out);

// Appends the triplets of (matrix on `sites`, identity elsewhere).
void embed_local(const ChainBasis& basis, std::span<const int> sites, const Eigen::MatrixXcd& matrix,
                 std::vector<Eigen::Triplet<cplx>>& triplets);

// Bipartition of the chain into `sites` (kept in the given order) and the
// remaining sites (ascending). Reusable across many states.
class SiteSplit {
public:
    SiteSplit(const ChainBasis& basis, std::span<const int> sites);

    std::size_t local_dimension() const { return local_dim_; }
    std::size_t environment_dimension() const { return env_dim_; }
    Eigen::MatrixXcd reduce(const Eigen::VectorXcd& psi) const;
    Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& rho) const;

private:
    std::size_t full_dim_;
    std::size_t local_dim_;
    std::size_t env_dim_;
    std::vector<std::size_t> table_; // full index of (a, e) at a * env_dim + e
};

// Reduced density matrix of |psi><psi| on `sites` (kept in the given order).
Eigen::MatrixXcd reduce_pure(const ChainBasis& basis, const Eigen::VectorXcd& psi, std::span<const int> sites);

// Same for a dense density matrix on the full chain.
Eigen::MatrixXcd reduce_dense(const ChainBasis& basis, const Eigen::MatrixXcd& rho, std::span<const int> sites);

// Single-site spin operators in the digit basis.
Eigen::MatrixXcd pauli_x();
Eigen::MatrixXcd pauli_y();
Eigen::MatrixXcd pauli_z();
Eigen::MatrixXcd spin_z(int site_dim);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Sum of singular values.
double trace_norm(const Eigen::MatrixXcd& m);
double operator_norm(const Eigen::MatrixXcd& m);

} // namespace aqecc
