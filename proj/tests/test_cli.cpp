#include <doctest.h>

#include <json.hpp>

#include "cli_support.hpp"

using namespace cli_support;
using nlohmann::json;

namespace {

json read_json(const fs::path& p)
{
    return json::parse(slurp(p));
}

} // namespace

TEST_CASE("usage errors and help")
{
    const auto dir = scratch_dir("usage");
    CHECK(aqecc::cli_dispatch(std::vector<std::string>{"bogus"}) == 2);
    CHECK(aqecc::cli_dispatch(std::vector<std::string>{}) == 2);
    CHECK(aqecc::cli_dispatch(std::vector<std::string>{"--help"}) == 0);
    CHECK(run({"codes", "rdm", "--model", "heisenberg"}, dir / "missing") == 2);
    CHECK(run({"codes", "rdm", "--n", "10", "--m", "1"}, dir / "parity") == 1);
    CHECK(run({"codes", "rdm", "--model", "ising", "--n", "10"}, dir / "model") == 1);
    CHECK(run({"ed", "spectrum", "--hamiltonian-file", (dir / "absent.json").string()}, dir / "file") == 1);
}

TEST_CASE("codes commands")
{
    const auto dir = scratch_dir("codes");
    REQUIRE(run({"codes", "rdm", "--model", "heisenberg", "--n", "1000", "--m", "0", "--d", "3"}, dir / "rdm") == 0);
    const std::string csv = slurp(dir / "rdm" / "weights.csv");
    CHECK(csv.rfind("# schema=aqecc/1 config_hash=", 0) == 0);
    const json rdm = read_json(dir / "rdm" / "rdm.json");
    CHECK(rdm["schema"] == "aqecc/1");

    // The default ladder does not fit at N = 8; a wider capacity does.
    CHECK(run({"codes", "verify", "--model", "motzkin", "--n", "8", "--k", "1", "--d", "1"}, dir / "cap") == 1);
    REQUIRE(run({"codes", "verify", "--model", "motzkin", "--n", "8", "--k", "1", "--d", "1", "--capacity", "3"},
                dir / "verify")
            == 0);
    const json kl = read_json(dir / "verify" / "kl_report.json");
    CHECK(kl["path"] == "dense");
    CHECK(kl["magnetizations"] == json::array({-3, 0, 3}));
    CHECK(kl["epsilon_matrix"].size() == 3);

    const json cfg = read_json(dir / "verify" / "config.json");
    CHECK(cfg["config_hash"] == kl["config_hash"]);
    CHECK(cfg["command"] == "codes verify");
}

TEST_CASE("scaling fit")
{
    const auto dir = scratch_dir("scaling");
    REQUIRE(run({"scaling", "fit", "--model", "heisenberg", "--d", "2", "--m", "0", "--mprime", "6", "--grid",
                 "64:4096:x2"},
                dir)
            == 0);
    const json fit = read_json(dir / "fit.json");
    const double slope = fit["slope"].get<double>();
    CHECK(slope >= -1.15);
    CHECK(slope <= -0.85);
}

TEST_CASE("ed and parent commands")
{
    const auto dir = scratch_dir("ed");
    REQUIRE(run({"ed", "spectrum", "--hamiltonian", "one-local-half", "--n", "6"}, dir / "spec") == 0);
    std::istringstream lines(slurp(dir / "spec" / "energies.csv"));
    std::string line;
    int count = 0;
    while (std::getline(lines, line))
        ++count;
    CHECK(count == 64 + 2);

    CHECK(run({"ed", "spectrum", "--hamiltonian", "heisenberg", "--n", "16"}, dir / "big") == 1);

    REQUIRE(run({"parent", "check", "--preset", "motzkin", "--n", "4"}, dir / "check") == 0);
    const json rep = read_json(dir / "check" / "ground_check.json");
    CHECK(rep["passed"] == true);
    CHECK(rep["degeneracy"] == 9);

    REQUIRE(run({"parent", "build", "--preset", "motzkin", "--n", "4", "--compare", "motzkin"}, dir / "build") == 0);
    const json cmp = read_json(dir / "build" / "compare.json");
    CHECK(cmp["max_abs_difference"].get<double>() <= 1e-12);
}

TEST_CASE("every reference command is deterministic")
{
    const auto dir = scratch_dir("determinism");
    const auto commands = reference_commands(dir);
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const auto out = dir / ("run" + std::to_string(i));
        CAPTURE(i);
        REQUIRE(run(commands[i], out) == 0);
        const auto first = snapshot(out);
        CHECK_FALSE(first.empty());
        fs::remove_all(out);
        REQUIRE(run(commands[i], out) == 0);
        CHECK(snapshot(out) == first);
    }
}
