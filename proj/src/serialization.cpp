#include "aqecc/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "aqecc/errors.hpp"
#include "aqecc/reporting.hpp"

namespace aqecc {

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw DataError("write to '" + path.string() + "' failed");
}

namespace {

const json& field(const json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key))
        throw DataError(what + ": missing field '" + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key, const std::string& what)
{
    const json& v = field(j, key, what);
    if (!v.is_number_integer())
        throw DataError(what + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

cplx entry_from_json(const json& e, const std::string& what)
{
    if (e.is_number())
        return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    throw DataError(what + ": matrix entries must be numbers or [re, im] pairs");
}

} // namespace

json matrix_to_json(const Eigen::MatrixXcd& m)
{
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    return out;
}

Eigen::MatrixXcd matrix_from_json(const json& j, Eigen::Index dim, const std::string& what)
{
    if (!j.is_array())
        throw DataError(what + ": matrix must be a list");
    Eigen::MatrixXcd m(dim, dim);
    // Either a flat row-major list (dim^2 entries) or a list of dim rows.
    if (j.size() == static_cast<std::size_t>(dim)) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            const json& row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
                throw ShapeError(what + ": row " + std::to_string(r) + " must have " + std::to_string(dim)
                                 + " entries");
            for (Eigen::Index c = 0; c < dim; ++c)
                m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)], what);
        }
        return m;
    }
    if (j.size() != static_cast<std::size_t>(dim * dim))
        throw ShapeError(what + ": expected " + std::to_string(dim * dim) + " entries, got "
                         + std::to_string(j.size()));
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            m(r, c) = entry_from_json(j[static_cast<std::size_t>(r * dim + c)], what);
    return m;
}

std::vector<LocalOperator> operator_set_from_json(const json& j)
{
    const std::string what = "operator set";
    const int D = int_field(j, "site_dim", what);
    const int d = int_field(j, "d", what);
    if (D != 2 && D != 3)
        throw DataError(what + ": site_dim must be 2 or 3");
    if (d < 1)
        throw DataError(what + ": d must be positive");
    const json& ops = field(j, "operators", what);
    if (!ops.is_array() || ops.empty())
        throw DataError(what + ": operators must be a non-empty list");
    const auto dim = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(D), d));
    std::vector<LocalOperator> out;
    for (std::size_t i = 0; i < ops.size(); ++i)
        out.push_back({1, d, matrix_from_json(ops[i], dim, what + " entry " + std::to_string(i))});
    return out;
}

LocalHamiltonian hamiltonian_from_json(const json& j)
{
    const std::string what = "hamiltonian";
    LocalHamiltonian h;
    h.site_dim = int_field(j, "site_dim", what);
    h.N = int_field(j, "N", what);
    h.name = j.is_object() && j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";
    if (h.site_dim != 2 && h.site_dim != 3)
        throw DataError(what + ": site_dim must be 2 or 3");
    const json& terms = field(j, "terms", what);
    if (!terms.is_array())
        throw DataError(what + ": terms must be a list");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tw = what + " term " + std::to_string(i);
        const int len = int_field(terms[i], "support_len", tw);
        if (len < 1 || len > h.N)
            throw DataError(tw + ": support_len must lie in [1, N]");
        const auto dim = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(h.site_dim), len));
        h.terms.push_back({len, matrix_from_json(field(terms[i], "matrix", tw), dim, tw)});
    }
    h.validate();
    return h;
}

json hamiltonian_to_json(const LocalHamiltonian& h)
{
    json terms = json::array();
    for (const auto& t : h.terms)
        terms.push_back({{"support_len", t.support_len}, {"matrix", matrix_to_json(t.matrix)}});
    return {{"site_dim", h.site_dim}, {"N", h.N}, {"name", h.name}, {"terms", terms}};
}

std::vector<LocalSymmetryGenerator> generators_from_json(const json& j)
{
    std::vector<LocalSymmetryGenerator> out;
    auto one = [&](const json& g, const std::string& what) {
        LocalSymmetryGenerator gen;
        gen.D = int_field(g, "D", what);
        gen.k = int_field(g, "k", what);
        const json& rules = field(g, "rules", what);
        if (!rules.is_array())
            throw DataError(what + ": rules must be a list");
        for (const auto& r : rules) {
            if (!r.is_array() || r.size() != 2 || !r[0].is_string() || !r[1].is_string())
                throw DataError(what + ": each rule must be [in_string, out_string]");
            gen.rules.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
        }
        gen.validate();
        out.push_back(std::move(gen));
    };
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            one(j[i], "generator " + std::to_string(i));
    } else {
        one(j, "generator");
    }
    return out;
}

json to_json(const KLReport& r)
{
    json eps = json::array();
    for (Eigen::Index i = 0; i < r.epsilon_matrix.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < r.epsilon_matrix.cols(); ++c)
            row.push_back(r.epsilon_matrix(i, c));
        eps.push_back(row);
    }
    return {{"model", std::string(to_string(r.model))},
            {"N", r.N},
            {"k", r.k},
            {"d", r.d},
            {"magnetizations", r.magnetizations},
            {"epsilon_max", r.epsilon_max},
            {"epsilon_matrix", eps},
            {"bound_appendix", r.bound_appendix},
            {"bound_maintext", r.bound_maintext},
            {"c_e_convention", r.c_e_convention},
            {"path", r.path},
            {"operator_basis_hash", r.basis_hash},
            {"operator_basis_size", r.basis_size}};
}

json to_json(const GroundSpaceReport& r)
{
    return {{"min_eigenvalue", r.min_eigenvalue},
            {"degeneracy", r.degeneracy},
            {"orbit_count", r.orbit_count},
            {"max_cross_orbit_element", r.max_cross_orbit_element},
            {"max_orbit_residual", r.max_orbit_residual},
            {"max_term_residual", r.max_term_residual},
            {"projector_distance", r.projector_distance},
            {"passed", r.passed()},
            {"failures", r.failures}};
}

json to_json(const CorrelationReport& r)
{
    return {{"xi", std::isfinite(r.xi) ? json(r.xi) : json("inf")},
            {"flag", r.flag},
            {"slope", r.slope},
            {"intercept", r.intercept},
            {"residual", r.residual},
            {"distances", r.distances},
            {"correlations", r.correlations}};
}

json to_json(const LineFit& f)
{
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared},
            {"rms_residual", f.rms_residual},
            {"points", f.points}};
}

json to_json(const ScanReport& r)
{
    json stats = {{"count", r.stats.count}, {"defined", r.stats.defined}, {"threshold", r.stats.threshold}};
    if (r.stats.defined) {
        stats["median"] = r.stats.median;
        stats["max"] = r.stats.max;
        stats["mean"] = r.stats.mean;
        stats["exceedance"] = r.stats.exceedance;
    }
    json out = {{"kind", r.kind},
                {"model", r.model},
                {"N", r.N},
                {"observable", r.observable},
                {"window", {{"center", r.window_center},
                            {"half_width", r.window_half_width},
                            {"population", r.window_population}}},
                {"statistics", stats}};
    if (!r.bins.empty()) {
        json bins = json::array();
        for (const auto& [g, v] : r.bins)
            bins.push_back({{"gap", g}, {"log_value", v}});
        out["bins"] = bins;
    }
    if (r.fit)
        out["fit"] = to_json(*r.fit);
    return out;
}

std::string scan_rows_csv(const ScanReport& r)
{
    std::ostringstream os;
    os << "index_a,index_b,energy_a,energy_b,gap,value\n";
    for (const auto& row : r.rows)
        os << row.index_a << ',' << row.index_b << ',' << format_double(row.energy_a) << ','
           << format_double(row.energy_b) << ',' << format_double(std::abs(row.energy_a - row.energy_b)) << ','
           << format_double(row.value) << '\n';
    return os.str();
}

std::string energies_csv(const EigenSolution& sol)
{
    std::ostringstream os;
    os << "index,energy,momentum,magnetization\n";
    for (std::size_t i = 0; i < sol.size(); ++i) {
        os << i << ',' << format_double(sol.energies[i]) << ',' << sol.momentum[i] << ',';
        if (sol.magnetization[i])
            os << *sol.magnetization[i];
        os << '\n';
    }
    return os.str();
}

std::string vectors_csv(const EigenSolution& sol)
{
    std::ostringstream os;
    os << "state,basis_index,re,im\n";
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const Eigen::VectorXcd v = sol.state(i);
        for (Eigen::Index b = 0; b < v.size(); ++b)
            if (v[b] != cplx(0.0, 0.0))
                os << i << ',' << b << ',' << format_double(v[b].real()) << ',' << format_double(v[b].imag())
                   << '\n';
    }
    return os.str();
}

} // namespace aqecc
