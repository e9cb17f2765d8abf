#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "aqecc/dense_oracle.hpp"
#include "aqecc/eth.hpp"
#include "aqecc/kl_checker.hpp"
#include "aqecc/parent_hamiltonian.hpp"
#include "aqecc/spin_chain.hpp"

namespace aqecc {

// Keys are kept sorted, which makes dumps canonical.
using json = nlohmann::json;

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Row-major list of entries, each a number or a [re, im] pair.
json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j, Eigen::Index dim, const std::string& what);

// {site_dim, d, operators: [[...]]}; every operator sits at sites 1..d.
std::vector<LocalOperator> operator_set_from_json(const json& j);
// {site_dim, N, terms: [{support_len, matrix}], name?}
LocalHamiltonian hamiltonian_from_json(const json& j);
json hamiltonian_to_json(const LocalHamiltonian& h);
// {D, k, rules: [[in, out], ...]} or a list of such objects.
std::vector<LocalSymmetryGenerator> generators_from_json(const json& j);

json to_json(const KLReport& r);
json to_json(const GroundSpaceReport& r);
json to_json(const CorrelationReport& r);
json to_json(const LineFit& f);
// Statistics and fit; the rows go to scan_rows_csv.
json to_json(const ScanReport& r);

// CSV bodies (header row first) with shortest round-trip floats.
std::string scan_rows_csv(const ScanReport& r);
std::string energies_csv(const EigenSolution& sol);
std::string vectors_csv(const EigenSolution& sol);

} // namespace aqecc
