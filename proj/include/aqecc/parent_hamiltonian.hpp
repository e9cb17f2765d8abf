#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aqecc/lattice.hpp"
#include "aqecc/spin_chain.hpp"

namespace aqecc {

// Invertible map on length-k digit strings ('0'..'D-1', first character on
// the leftmost site). Strings not listed as inputs are fixed points.
struct LocalSymmetryGenerator {
    int D = 2;
    int k = 2;
    std::vector<std::pair<std::string, std::string>> rules;

    // Throws DataError unless every string is well formed and the completed
    // map is a bijection.
    void validate() const;
    // Local-index form: image[a] is the index r(a) maps to.
    std::vector<std::size_t> image() const;
};

// Generator exchanging the two strings a <-> b.
LocalSymmetryGenerator swap_generator(int D, const std::string& a, const std::string& b);

// Spin-1 moves ud <-> 00, 0u <-> u0, 0d <-> d0 (digits d = 0, 0 = 1, u = 2).
std::vector<LocalSymmetryGenerator> motzkin_moves();
// Spin-1/2 neighbour exchange 01 <-> 10.
std::vector<LocalSymmetryGenerator> exchange_moves();

struct OrbitPartition {
    int D = 2;
    int N = 0;
    // Members ascending; orbits ordered by their least member, which is the
    // lexicographically least string.
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<std::size_t> orbit_of; // basis index -> orbit number

    std::size_t size() const { return orbits.size(); }
    std::size_t representative(std::size_t orbit) const { return orbits[orbit].front(); }
    Eigen::VectorXcd uniform_state(std::size_t orbit) const;
};

// Connected components of the basis under every generator at every wrapped
// position.
OrbitPartition orbit_decompose(std::span<const LocalSymmetryGenerator> generators, int D, int N,
                               const Budget& budget = Budget::from_env());

// Sum over generators and wrapped positions of the projectors
// (|s> - |r(s)>)(<s| - <r(s)|) / 2 over unordered pairs {s, r(s)}, s != r(s).
LocalHamiltonian build_projector_hamiltonian(std::span<const LocalSymmetryGenerator> generators, int D, int N);

struct GroundSpaceReport {
    double min_eigenvalue = 0.0;
    std::size_t degeneracy = 0;
    std::size_t orbit_count = 0;
    double max_cross_orbit_element = 0.0; // |H(r, c)| with r, c in distinct orbits
    double max_orbit_residual = 0.0;      // max_B ||H psi_B||
    double max_term_residual = 0.0;       // max over single projector terms
    double projector_distance = 0.0;      // operator norm of P_ground - P_orbits
    std::vector<std::string> failures;    // one entry per failed check

    bool passed() const { return failures.empty(); }
};

// Checks (i) lowest eigenvalue 0, (ii) degeneracy equal to the orbit count,
// (iii) H annihilates every uniform orbit superposition and (iv) the ground
// projector equals their span. Diagonalizes orbit blocks separately when H
// is block diagonal in the partition, otherwise the full matrix.
GroundSpaceReport ground_space_check(const LocalHamiltonian& h, const OrbitPartition& partition,
                                     const Budget& budget = Budget::from_env());

} // namespace aqecc
