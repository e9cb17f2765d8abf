#include "aqecc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "aqecc/codeword_rdm.hpp"
#include "aqecc/combinatorics.hpp"
#include "aqecc/errors.hpp"
#include "aqecc/eth.hpp"
#include "aqecc/kl_checker.hpp"
#include "aqecc/parent_hamiltonian.hpp"
#include "aqecc/reporting.hpp"
#include "aqecc/serialization.hpp"
#include "aqecc/spin_chain.hpp"

namespace aqecc {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    std::string out = "out";
    unsigned threads = 1;
    std::uint64_t seed = 0;
};

// Output sink for one run: every file carries the schema version and the
// hash of the resolved configuration.
class Run {
public:
    Run(const GlobalOptions& g, std::string command, json params) : dir_(g.out), command_(std::move(command))
    {
        params["out"] = g.out;
        params["seed"] = g.seed;
        params["threads"] = g.threads;
        params_ = std::move(params);
        hash_ = hex64(fnv1a64(command_ + "\n" + params_.dump()));
        write_json("config.json", json::object());
    }

    void write_json(const std::string& name, json body) const
    {
        body["schema"] = std::string(kSchemaVersion);
        body["config_hash"] = hash_;
        if (name == "config.json") {
            body["command"] = command_;
            body["params"] = params_;
        }
        write_text_file(dir_ / name, body.dump(2) + "\n");
    }

    void write_csv(const std::string& name, const std::string& body) const
    {
        write_text_file(dir_ / name, "# schema=" + std::string(kSchemaVersion) + " config_hash=" + hash_ + "\n" + body);
    }

private:
    fs::path dir_;
    std::string command_;
    json params_;
    std::string hash_;
};

// Pauli matrices for spin-1/2, spin matrices for spin-1.
Eigen::MatrixXcd single_site_observable(const std::string& name, int D)
{
    if (name == "sz")
        return spin_z(D);
    if (name == "id")
        return Eigen::MatrixXcd::Identity(D, D);
    if (name != "sx" && name != "sy")
        throw FormatError("unknown observable '" + name + "' (expected sx, sy, sz or id)");
    if (D == 2)
        return name == "sx" ? pauli_x() : pauli_y();
    Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(3, 3);
    raise(1, 0) = std::numbers::sqrt2;
    raise(2, 1) = std::numbers::sqrt2;
    if (name == "sx")
        return 0.5 * (raise + raise.adjoint());
    return (raise - raise.adjoint()) / cplx(0.0, 2.0);
}

std::string basis_string(const ChainBasis& basis, std::size_t index)
{
    std::string s;
    for (int site = 0; site < basis.num_sites(); ++site)
        s += static_cast<char>('0' + basis.digit(index, site));
    return s;
}

struct ChainOptions {
    std::string hamiltonian = "heisenberg";
    std::string hamiltonian_file;
    int n = 0;
    bool q0_only = false;
};

void add_chain_options(CLI::App* cmd, ChainOptions& c)
{
    cmd->add_option("--hamiltonian", c.hamiltonian, "one-local-half, one-local-one, heisenberg or motzkin")
        ->capture_default_str();
    cmd->add_option("--hamiltonian-file", c.hamiltonian_file, "JSON {site_dim, N, terms}; overrides --hamiltonian");
    cmd->add_option("--n", c.n, "number of sites (ignored with --hamiltonian-file)");
    cmd->add_flag("--q0-only", c.q0_only, "keep only momentum-zero eigenstates");
}

LocalHamiltonian resolve_hamiltonian(const ChainOptions& c)
{
    if (!c.hamiltonian_file.empty())
        return hamiltonian_from_json(read_json_file(c.hamiltonian_file));
    if (c.n < 1)
        throw RangeError("--n must be positive");
    return build_hamiltonian(parse_model_name(c.hamiltonian), c.n);
}

json chain_params(const ChainOptions& c)
{
    json p = {{"n", c.n}, {"q0_only", c.q0_only}};
    if (!c.hamiltonian_file.empty()) {
        p["hamiltonian_file"] = c.hamiltonian_file;
        p["hamiltonian_file_hash"]
            = hex64(fnv1a64(hamiltonian_to_json(hamiltonian_from_json(read_json_file(c.hamiltonian_file))).dump()));
    } else {
        p["hamiltonian"] = c.hamiltonian;
    }
    return p;
}

EigenSolution solve_chain(const LocalHamiltonian& h, const ChainOptions& c, const GlobalOptions& g)
{
    DiagonalizeOptions opts;
    opts.momentum_zero_only = c.q0_only;
    opts.threads = g.threads;
    return diagonalize_sectored(h, opts);
}

struct ParentOptions {
    std::string preset = "motzkin";
    std::string generators_file;
    int n = 0;
    std::string compare;
};

void add_parent_options(CLI::App* cmd, ParentOptions& p)
{
    cmd->add_option("--preset", p.preset, "motzkin, exchange or none")->capture_default_str();
    cmd->add_option("--generators", p.generators_file, "JSON {D, k, rules}; overrides --preset");
    cmd->add_option("--n", p.n, "number of sites")->required();
}

std::pair<std::vector<LocalSymmetryGenerator>, int> resolve_generators(const ParentOptions& p)
{
    if (!p.generators_file.empty()) {
        auto gens = generators_from_json(read_json_file(p.generators_file));
        if (gens.empty())
            throw DataError("generator file lists no generators; use --preset none for the empty set");
        return {gens, gens.front().D};
    }
    if (p.preset == "motzkin")
        return {motzkin_moves(), 3};
    if (p.preset == "exchange")
        return {exchange_moves(), 2};
    if (p.preset == "none" || p.preset == "none-2")
        return {{}, 2};
    if (p.preset == "none-3")
        return {{}, 3};
    throw FormatError("unknown preset '" + p.preset + "' (expected motzkin, exchange, none, none-2 or none-3)");
}

json parent_params(const ParentOptions& p)
{
    json j = {{"n", p.n}};
    if (!p.generators_file.empty()) {
        j["generators_file"] = p.generators_file;
        json rules = json::array();
        for (const auto& g : generators_from_json(read_json_file(p.generators_file)))
            rules.push_back({{"D", g.D}, {"k", g.k}, {"rules", g.rules}});
        j["generators"] = rules;
    } else {
        j["preset"] = p.preset;
    }
    if (!p.compare.empty())
        j["compare"] = p.compare;
    return j;
}

struct WindowOptions {
    std::optional<double> energy;
    std::optional<double> half_width;
};

void add_window_options(CLI::App* cmd, WindowOptions& w)
{
    cmd->add_option("--energy", w.energy, "window centre (default: middle of the spectrum)");
    cmd->add_option("--half-width", w.half_width, "window half width (default: sqrt(N))");
}

MicrocanonicalWindow resolve_window(const EigenSolution& sol, const WindowOptions& w)
{
    const double center = w.energy.value_or(0.5 * (sol.energies.front() + sol.energies.back()));
    return make_window(sol, center, w.half_width);
}

json window_params(const WindowOptions& w)
{
    return {{"energy", w.energy ? json(*w.energy) : json("mid")},
            {"half_width", w.half_width ? json(*w.half_width) : json("sqrt(N)")}};
}

} // namespace

int cli_dispatch(int argc, char** argv)
{
    CLI::App app{"Approximate quantum error correction codes from symmetric spin chains"};
    app.require_subcommand(1);
    // Global options may follow the subcommand.
    app.fallthrough();
    app.set_version_flag("--version", std::string(kSchemaVersion));

    GlobalOptions g;
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();

    std::function<void()> action;

    // ---- codes -----------------------------------------------------------
    auto* codes = app.add_subcommand("codes", "magnetization-sector codes");
    codes->require_subcommand(1);

    struct {
        std::string model = "heisenberg";
        int n = 0;
        int m = 0;
        int d = 1;
        int k = 1;
        double capacity = 1.0;
        int max_digits = 300;
        std::string path = "auto";
        std::string operators;
    } co;

    auto* rdm = codes->add_subcommand("rdm", "closed-form reduced density matrix of one codeword");
    rdm->add_option("--model", co.model, "heisenberg or motzkin")->capture_default_str();
    rdm->add_option("--n", co.n, "number of sites")->required();
    rdm->add_option("--m", co.m, "magnetization")->capture_default_str();
    rdm->add_option("--d", co.d, "support length")->capture_default_str();
    rdm->add_option("--max-digits", co.max_digits, "exact arithmetic cap in decimal digits")->capture_default_str();
    rdm->callback([&] {
        action = [&] {
            const Run run(g, "codes rdm",
                          {{"model", co.model}, {"n", co.n}, {"m", co.m}, {"d", co.d}, {"max_digits", co.max_digits}});
            const CodewordSpec spec{parse_model(co.model), co.n, co.m};
            const auto w = schmidt_weights(spec, co.d, CountOptions{co.max_digits});
            std::ostringstream csv;
            csv << "r,weight,log_weight\n";
            for (int r = -co.d; r <= co.d; ++r)
                csv << r << ',' << format_double(w.weight(r)) << ',' << format_double(w.log_weight(r)) << '\n';
            run.write_csv("weights.csv", csv.str());
            run.write_json("rdm.json", {{"model", co.model},
                                        {"N", co.n},
                                        {"m", co.m},
                                        {"d", co.d},
                                        {"log_mode", w.log_mode},
                                        {"weights", w.weights}});
        };
    });

    auto* select = codes->add_subcommand("select", "magnetization ladder for k logical qubits");
    select->add_option("--model", co.model, "heisenberg or motzkin")->capture_default_str();
    select->add_option("--n", co.n, "number of sites")->required();
    select->add_option("--k", co.k, "logical qubits")->capture_default_str();
    select->add_option("--d", co.d, "error support length")->capture_default_str();
    select->add_option("--capacity", co.capacity, "ladder must fit within capacity * sqrt(N)")->capture_default_str();
    select->callback([&] {
        action = [&] {
            const Run run(g, "codes select",
                          {{"model", co.model}, {"n", co.n}, {"k", co.k}, {"d", co.d}, {"capacity", co.capacity}});
            const auto space = select_code_space(parse_model(co.model), co.n, co.k, co.d, co.capacity);
            run.write_json("code_space.json", {{"model", co.model},
                                               {"N", space.N},
                                               {"k", space.k},
                                               {"d", space.d},
                                               {"spacing", space.spacing},
                                               {"capacity", co.capacity},
                                               {"magnetizations", space.magnetizations}});
        };
    });

    auto* verify = codes->add_subcommand("verify", "Knill-Laflamme deviations of a selected code");
    verify->add_option("--model", co.model, "heisenberg or motzkin")->capture_default_str();
    verify->add_option("--n", co.n, "number of sites")->required();
    verify->add_option("--k", co.k, "logical qubits")->capture_default_str();
    verify->add_option("--d", co.d, "error support length")->capture_default_str();
    verify->add_option("--capacity", co.capacity, "ladder must fit within capacity * sqrt(N)")->capture_default_str();
    verify->add_option("--path", co.path, "auto, dense or rdm")->capture_default_str();
    verify->add_option("--operators", co.operators, "JSON operator set {site_dim, d, operators}");
    verify->callback([&] {
        action = [&] {
            json params = {{"model", co.model}, {"n", co.n},         {"k", co.k},
                           {"d", co.d},         {"capacity", co.capacity}, {"path", co.path}};
            std::vector<LocalOperator> ops;
            if (!co.operators.empty()) {
                ops = operator_set_from_json(read_json_file(co.operators));
                params["operators"] = co.operators;
                params["operators_hash"] = operator_basis_hash(ops);
            }
            const Run run(g, "codes verify", params);
            VerifyPath path = VerifyPath::Auto;
            if (co.path == "dense")
                path = VerifyPath::Dense;
            else if (co.path == "rdm")
                path = VerifyPath::Rdm;
            else if (co.path != "auto")
                throw FormatError("--path must be auto, dense or rdm");
            const auto space = select_code_space(parse_model(co.model), co.n, co.k, co.d, co.capacity);
            if (!ops.empty() && ops.front().support_len != co.d)
                throw ShapeError("operator set support differs from --d");
            run.write_json("kl_report.json", to_json(verify_code(space, ops, path)));
        };
    });

    // ---- ed --------------------------------------------------------------
    auto* ed = app.add_subcommand("ed", "exact diagonalization");
    ed->require_subcommand(1);
    ChainOptions chain;
    WindowOptions window;
    struct {
        bool vectors = false;
        int extremal = 0;
        std::size_t max_dim = 1u << 22;
        int L = 4;
        std::string mode = "uniform";
        int d = 1;
        double c_log = 1.0;
    } eo;

    auto* spectrum = ed->add_subcommand("spectrum", "sectored eigen-decomposition");
    add_chain_options(spectrum, chain);
    spectrum->add_flag("--vectors", eo.vectors, "also write vectors.csv");
    spectrum->add_option("--extremal", eo.extremal, "only the lowest K levels per magnetization sector (Lanczos)");
    spectrum->add_option("--max-dim", eo.max_dim, "dimension cap for --extremal")->capture_default_str();
    spectrum->callback([&] {
        action = [&] {
            json params = chain_params(chain);
            params["vectors"] = eo.vectors;
            params["extremal"] = eo.extremal;
            if (eo.extremal > 0)
                params["max_dim"] = eo.max_dim;
            const Run run(g, "ed spectrum", params);
            const LocalHamiltonian h = resolve_hamiltonian(chain);
            if (eo.extremal > 0) {
                const auto sectors = extremal_spectrum(h, eo.extremal, eo.max_dim);
                std::ostringstream csv;
                csv << "magnetization,level,energy,residual\n";
                for (const auto& s : sectors)
                    for (std::size_t i = 0; i < s.energies.size(); ++i) {
                        if (s.magnetization)
                            csv << *s.magnetization;
                        csv << ',' << i << ',' << format_double(s.energies[i]) << ','
                            << format_double(s.residuals[i]) << '\n';
                    }
                run.write_csv("extremal.csv", csv.str());
                run.write_json("metadata.json", {{"hamiltonian", h.name},
                                                 {"N", h.N},
                                                 {"site_dim", h.site_dim},
                                                 {"sectors", sectors.size()},
                                                 {"method", "lanczos"}});
                return;
            }
            const EigenSolution sol = solve_chain(h, chain, g);
            run.write_csv("energies.csv", energies_csv(sol));
            run.write_json("metadata.json", {{"hamiltonian", h.name},
                                             {"N", h.N},
                                             {"site_dim", h.site_dim},
                                             {"states", sol.size()},
                                             {"blocks", sol.block_count()},
                                             {"momentum_zero_only", sol.momentum_zero_only},
                                             {"magnetization_conserved", conserves_magnetization(h)},
                                             {"method", "dense sector blocks"}});
            if (eo.vectors)
                run.write_csv("vectors.csv", vectors_csv(sol));
        };
    });

    auto* sample = ed->add_subcommand("sample", "random eigenstate codewords from an energy window");
    add_chain_options(sample, chain);
    add_window_options(sample, window);
    sample->add_option("--L", eo.L, "number of codewords")->capture_default_str();
    sample->add_option("--mode", eo.mode, "uniform or stratified")->capture_default_str();
    sample->add_option("--d", eo.d, "error support length for the deviation check")->capture_default_str();
    sample->add_option("--clog", eo.c_log, "constant in front of log N")->capture_default_str();
    sample->callback([&] {
        action = [&] {
            json params = chain_params(chain);
            params.update(window_params(window));
            params.update({{"L", eo.L}, {"mode", eo.mode}, {"d", eo.d}, {"clog", eo.c_log}});
            const Run run(g, "ed sample", params);
            SamplingMode mode = SamplingMode::Uniform;
            if (eo.mode == "stratified")
                mode = SamplingMode::Stratified;
            else if (eo.mode != "uniform")
                throw FormatError("--mode must be uniform or stratified");
            const LocalHamiltonian h = resolve_hamiltonian(chain);
            const EigenSolution sol = solve_chain(h, chain, g);
            const auto win = resolve_window(sol, window);
            const auto trial = theorem1_trial(sol, win, eo.L, eo.d, mode, g.seed, eo.c_log);
            json eps = json::array();
            for (Eigen::Index i = 0; i < trial.epsilon.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index c = 0; c < trial.epsilon.cols(); ++c)
                    row.push_back(trial.epsilon(i, c));
                eps.push_back(row);
            }
            json momenta = json::array();
            for (auto i : trial.indices)
                momenta.push_back(sol.momentum[i]);
            run.write_json("sample.json", {{"indices", trial.indices},
                                           {"energies", trial.energies},
                                           {"momenta", momenta},
                                           {"window_center", win.center},
                                           {"window_half_width", win.half_width},
                                           {"window_population", win.members.size()},
                                           {"distance", trial.distance},
                                           {"epsilon_max", trial.epsilon_max},
                                           {"epsilon_matrix", eps}});
        };
    });

    // ---- eth -------------------------------------------------------------
    auto* eth = app.add_subcommand("eth", "eigenstate thermalization diagnostics");
    eth->require_subcommand(1);
    struct {
        std::string kind = "diagonal";
        std::string observable = "sz";
        int site = 1;
        int support = 1;
        std::size_t pairs = 200;
        double delta = 0.1;
        int bins = 8;
        double threshold = 0.1;
    } so;
    auto* scan = eth->add_subcommand("scan", "diagonal, offdiagonal, weak, rdm or correlation scan");
    add_chain_options(scan, chain);
    add_window_options(scan, window);
    scan->add_option("--kind", so.kind, "diagonal, offdiagonal, weak, rdm or correlation")->capture_default_str();
    scan->add_option("--observable", so.observable, "sx, sy, sz or id")->capture_default_str();
    scan->add_option("--site", so.site, "site of the observable (1-based)")->capture_default_str();
    scan->add_option("--support", so.support, "support length for rdm scans")->capture_default_str();
    scan->add_option("--pairs", so.pairs, "pairs sampled by rdm scans")->capture_default_str();
    scan->add_option("--delta", so.delta, "threshold for weak scans")->capture_default_str();
    scan->add_option("--bins", so.bins, "equal-population bins for offdiagonal fits")->capture_default_str();
    scan->add_option("--threshold", so.threshold, "exceedance threshold")->capture_default_str();
    scan->callback([&] {
        action = [&] {
            json params = chain_params(chain);
            params.update(window_params(window));
            params.update({{"kind", so.kind},
                           {"observable", so.observable},
                           {"site", so.site},
                           {"support", so.support},
                           {"pairs", so.pairs},
                           {"delta", so.delta},
                           {"bins", so.bins},
                           {"threshold", so.threshold}});
            const Run run(g, "eth scan", params);
            const LocalHamiltonian h = resolve_hamiltonian(chain);
            const EigenSolution sol = solve_chain(h, chain, g);
            const auto win = resolve_window(sol, window);
            const LocalOperator op{so.site, 1, single_site_observable(so.observable, h.site_dim)};
            ScanOptions opts;
            opts.bins = so.bins;
            opts.exceedance_threshold = so.threshold;
            opts.threads = g.threads;
            if (so.kind == "correlation") {
                const auto rho = microcanonical_state(sol, win);
                std::vector<Eigen::MatrixXcd> family;
                for (const char* name : {"sx", "sy", "sz"})
                    family.push_back(single_site_observable(name, h.site_dim));
                const auto rep = correlation_length_estimate(rho, family);
                std::ostringstream csv;
                csv << "distance,correlation\n";
                for (std::size_t i = 0; i < rep.distances.size(); ++i)
                    csv << rep.distances[i] << ',' << format_double(rep.correlations[i]) << '\n';
                run.write_csv("correlation.csv", csv.str());
                json body = to_json(rep);
                body["window_population"] = win.members.size();
                run.write_json("correlation.json", body);
                return;
            }
            if (so.kind == "weak") {
                run.write_json("weak.json", {{"fraction", weak_eth_fraction(sol, win, op, so.delta)},
                                             {"delta", so.delta},
                                             {"window_center", win.center},
                                             {"window_half_width", win.half_width},
                                             {"window_population", win.members.size()}});
                return;
            }
            ScanReport rep;
            if (so.kind == "diagonal")
                rep = diagonal_eth_scan(sol, win, op, opts);
            else if (so.kind == "offdiagonal")
                rep = offdiagonal_decay_scan(sol, win, op, opts);
            else if (so.kind == "rdm")
                rep = rdm_distance_pairs(sol, win, so.support, so.pairs, g.seed, opts);
            else
                throw FormatError("--kind must be diagonal, offdiagonal, weak, rdm or correlation");
            run.write_csv("scan.csv", scan_rows_csv(rep));
            run.write_json("scan.json", to_json(rep));
        };
    });

    // ---- parent ----------------------------------------------------------
    auto* parent = app.add_subcommand("parent", "parent Hamiltonians from local symmetry moves");
    parent->require_subcommand(1);
    ParentOptions po;

    auto* orbits = parent->add_subcommand("orbits", "orbit partition of the basis");
    add_parent_options(orbits, po);
    orbits->callback([&] {
        action = [&] {
            const Run run(g, "parent orbits", parent_params(po));
            const auto [gens, D] = resolve_generators(po);
            const auto part = orbit_decompose(gens, D, po.n);
            const ChainBasis basis(D, po.n);
            std::ostringstream csv;
            csv << "orbit,representative,string,size,magnetizations\n";
            json sizes = json::array();
            for (std::size_t o = 0; o < part.size(); ++o) {
                std::vector<int> mags;
                for (auto i : part.orbits[o])
                    mags.push_back(basis.magnetization(i));
                std::sort(mags.begin(), mags.end());
                mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
                std::string mag_text;
                for (std::size_t t = 0; t < mags.size(); ++t)
                    mag_text += (t ? ";" : "") + std::to_string(mags[t]);
                csv << o << ',' << part.representative(o) << ',' << basis_string(basis, part.representative(o)) << ','
                    << part.orbits[o].size() << ',' << mag_text << '\n';
                sizes.push_back(part.orbits[o].size());
            }
            run.write_csv("orbits.csv", csv.str());
            run.write_json("orbits.json", {{"D", D}, {"N", po.n}, {"orbit_count", part.size()}, {"sizes", sizes}});
        };
    });

    auto* build = parent->add_subcommand("build", "projector Hamiltonian of the moves");
    add_parent_options(build, po);
    build->add_option("--compare", po.compare, "named Hamiltonian to compare entrywise");
    build->callback([&] {
        action = [&] {
            const Run run(g, "parent build", parent_params(po));
            const auto [gens, D] = resolve_generators(po);
            const LocalHamiltonian h = build_projector_hamiltonian(gens, D, po.n);
            run.write_json("hamiltonian.json", hamiltonian_to_json(h));
            if (!po.compare.empty()) {
                const LocalHamiltonian ref = build_hamiltonian(parse_model_name(po.compare), po.n);
                if (ref.site_dim != D)
                    throw ShapeError("--compare model has a different site dimension");
                const SparseOperator diff = to_sparse(h) - to_sparse(ref);
                double worst = 0.0;
                for (Eigen::Index c = 0; c < diff.outerSize(); ++c)
                    for (SparseOperator::InnerIterator it(diff, c); it; ++it)
                        worst = std::max(worst, std::abs(it.value()));
                run.write_json("compare.json", {{"reference", po.compare}, {"max_abs_difference", worst}});
            }
        };
    });

    auto* check = parent->add_subcommand("check", "ground space versus uniform orbit superpositions");
    add_parent_options(check, po);
    int check_status = 0;
    check->callback([&] {
        action = [&] {
            const Run run(g, "parent check", parent_params(po));
            const auto [gens, D] = resolve_generators(po);
            const LocalHamiltonian h = build_projector_hamiltonian(gens, D, po.n);
            const auto part = orbit_decompose(gens, D, po.n);
            const auto rep = ground_space_check(h, part);
            run.write_json("ground_check.json", to_json(rep));
            for (const auto& f : rep.failures)
                std::cerr << "check failed: " << f << '\n';
            if (!rep.passed())
                check_status = 1;
        };
    });

    // ---- scaling ---------------------------------------------------------
    auto* scaling = app.add_subcommand("scaling", "closed-form trace-distance scaling");
    scaling->require_subcommand(1);
    struct {
        std::string model = "heisenberg";
        int d = 2;
        int m = 0;
        int mprime = 6;
        std::string grid = "64:4096:x2";
        int max_digits = 300;
    } sc;
    auto* fit = scaling->add_subcommand("fit", "log-log fit of the codeword distance against N");
    fit->add_option("--model", sc.model, "heisenberg or motzkin")->capture_default_str();
    fit->add_option("--d", sc.d, "support length")->capture_default_str();
    fit->add_option("--m", sc.m, "first magnetization")->capture_default_str();
    fit->add_option("--mprime", sc.mprime, "second magnetization")->capture_default_str();
    fit->add_option("--grid", sc.grid, "lo:hi:x2, lo:hi:+s or a comma list")->capture_default_str();
    fit->add_option("--max-digits", sc.max_digits, "exact arithmetic cap in decimal digits")->capture_default_str();
    fit->callback([&] {
        action = [&] {
            const Run run(g, "scaling fit",
                          {{"model", sc.model},
                           {"d", sc.d},
                           {"m", sc.m},
                           {"mprime", sc.mprime},
                           {"grid", sc.grid},
                           {"max_digits", sc.max_digits}});
            const auto grid = parse_grid(sc.grid);
            const auto curve
                = scaling_curve(parse_model(sc.model), sc.d, sc.m, sc.mprime, grid, CountOptions{sc.max_digits}, g.threads);
            std::ostringstream csv;
            csv << "N,distance\n";
            std::vector<std::pair<double, double>> pts;
            for (const auto& p : curve) {
                csv << p.N << ',' << format_double(p.distance) << '\n';
                pts.emplace_back(p.N, p.distance);
            }
            run.write_csv("scaling.csv", csv.str());
            json body = to_json(fit_power_law(pts));
            body["reference_slope"] = -1.0;
            body["model"] = sc.model;
            run.write_json("fit.json", body);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (action)
            action();
        return check_status;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cli_dispatch(const std::vector<std::string>& args)
{
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("aqecc");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());
    argv.push_back(nullptr);
    return cli_dispatch(static_cast<int>(storage.size()), argv.data());
}

} // namespace aqecc
