// End-to-end checks of the rsg command-line tool: every subcommand is invoked
// as a child process and judged on its exit code and JSON report. RSG_CLI_PATH
// is injected by the build and points at the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

using nlohmann::json;

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr, interleaved
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(RSG_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

json report_of(const CliResult& r) { return json::parse(r.output); }

}  // namespace

TEST_CASE("gen writes an instance file and run replays the two-hub oscillation") {
    auto gen = run_cli("gen --family no-ibe --degree 3 --lambda 1/2 --slope 1 -o cli_ni3.json");
    REQUIRE(gen.exit_code == 0);

    auto run = run_cli("run cli_ni3.json --mode ib --scheduler first");
    REQUIRE(run.exit_code == 0);
    const json rep = report_of(run);
    CHECK(rep["command"] == "run");
    CHECK(rep["instance"]["agents"] == 5);
    CHECK(rep["instance"]["max_resource_degree"] == 3);
    CHECK(rep["instance"]["lambda"] == "1/2");
    CHECK(rep["instance"]["regime"] == "mixed");
    CHECK(rep["outcome"] == "profile-revisited");
    CHECK(rep["steps"] == 2);
    CHECK(rep["first_seen"] == 0);
    CHECK(rep["final"] == rep["initial"]);
}

TEST_CASE("run honors --expect on both hit and miss") {
    CHECK(run_cli("run cli_ni3.json --mode ib --expect profile-revisited").exit_code == 0);

    auto miss = run_cli("run cli_ni3.json --mode ib --expect equilibrium");
    CHECK(miss.exit_code == 1);
    const json rep = report_of(miss);
    CHECK(rep["expected"] == "equilibrium");
    CHECK(rep["expectation_met"] == false);
}

TEST_CASE("a ring settles under impact-aware dynamics within one move per agent") {
    REQUIRE(run_cli("gen --family cycle --size 5 --seed 7 --lambda 1/2 -o cli_c5.json").exit_code ==
            0);
    auto run = run_cli("run cli_c5.json --mode ia --scheduler round-robin --expect equilibrium");
    REQUIRE(run.exit_code == 0);
    const json rep = report_of(run);
    CHECK(rep["outcome"] == "equilibrium");
    CHECK(rep["steps"].get<int>() <= 5);
}

TEST_CASE("enumerate counts equilibria on both sides of the lower bound") {
    REQUIRE(
        run_cli("gen --family no-ibe --degree 3 --lambda 7/10 --slope 1 -o cli_ni3_high.json")
            .exit_code == 0);

    auto high = run_cli("enumerate cli_ni3_high.json --mode ib --expect equilibrium");
    REQUIRE(high.exit_code == 0);
    const json high_rep = report_of(high);
    CHECK(high_rep["profile_count"] == 2);
    CHECK(high_rep["equilibrium_count"].get<int>() >= 1);

    auto low = run_cli("enumerate cli_ni3.json --mode ib --expect no-equilibrium");
    REQUIRE(low.exit_code == 0);
    CHECK(report_of(low)["equilibrium_count"] == 0);

    CHECK(run_cli("enumerate cli_ni3.json --mode ib --expect equilibrium").exit_code == 1);
}

TEST_CASE("fip reports the four-move chase cycle with a concrete witness") {
    REQUIRE(run_cli("gen --family chaser --degree 4 --lambda 1/3 --slope 1 -o cli_ch4.json")
                .exit_code == 0);
    auto fip = run_cli("fip cli_ch4.json --mode ia --expect fails");
    REQUIRE(fip.exit_code == 0);
    const json rep = report_of(fip);
    CHECK(rep["holds"] == false);
    CHECK(rep["profile_count"] == 4);
    REQUIRE(rep["witness"]["moves"].size() == 4);
    // The two choosy agents alternate flights; the fill agents never move.
    for (const auto& m : rep["witness"]["moves"]) {
        const std::string agent = m["agent"];
        CHECK((agent == "a1" || agent == "a2"));
        CHECK(m["from"] != m["to"]);
    }

    auto holds = run_cli("fip cli_ni3_high.json --mode ib --expect holds");
    CHECK(holds.exit_code == 0);
    CHECK(report_of(holds)["holds"] == true);
}

TEST_CASE("bounds prints the exact regime thresholds") {
    auto d3 = run_cli("bounds --delta 3");
    REQUIRE(d3.exit_code == 0);
    const json rep3 = report_of(d3);
    CHECK(rep3["L"] == "3/5");
    CHECK(rep3["U"] == "2/5");

    const json rep2 = report_of(run_cli("bounds --delta 2"));
    CHECK(rep2["L"] == "0/1");
    CHECK(rep2["U"] == "1/1");

    const json rep4 = report_of(run_cli("bounds --delta 4"));
    CHECK(rep4["L"] == "8/11");
    CHECK(rep4["U"] == "3/11");
}

TEST_CASE("audits refuse outside their regime and certify inside it") {
    // Peak below the increasing-regime bound: refused, violated bound printed.
    auto below = run_cli("run cli_ni3.json --mode ib --audit phi-lex");
    CHECK(below.exit_code == 2);
    CHECK(below.output.find("3/5") != std::string::npos);

    // Abstract shape: refused.
    CHECK(run_cli("run cli_c5.json --mode ib --audit phi-lex").exit_code == 2);

    // At the bound the potential certifies the whole trace.
    REQUIRE(run_cli("gen --family no-ibe --degree 3 --lambda 3/5 --slope 1 -o cli_ni3_l.json")
                .exit_code == 0);
    auto lex = run_cli("run cli_ni3_l.json --mode ib --scheduler round-robin --audit phi-lex");
    REQUIRE(lex.exit_code == 0);
    CHECK(report_of(lex)["audit"]["ok"] == true);

    // Majority potential: fine at a peak below the decreasing-regime bound,
    // refused above it (U(4) = 3/11 < 1/3).
    REQUIRE(run_cli("gen --family chaser --degree 4 --lambda 1/5 --slope 1 -o cli_ch4_low.json")
                .exit_code == 0);
    auto maj = run_cli("run cli_ch4_low.json --mode ia --audit phi-majority --max-steps 40");
    REQUIRE(maj.exit_code == 0);
    CHECK(report_of(maj)["audit"]["ok"] == true);

    auto refused = run_cli("run cli_ch4.json --mode ia --audit phi-majority");
    CHECK(refused.exit_code == 2);
    CHECK(refused.output.find("3/11") != std::string::npos);
}

TEST_CASE("emit-digraph writes DOT next to the report") {
    auto r = run_cli("enumerate cli_ni3.json --mode ib --emit-digraph cli_ni3.dot");
    REQUIRE(r.exit_code == 0);
    std::ifstream dot("cli_ni3.dot");
    REQUIRE(dot.good());
    std::string text((std::istreambuf_iterator<char>(dot)), std::istreambuf_iterator<char>());
    CHECK(text.find("digraph improvement") != std::string::npos);
    CHECK(text.find("a1=q1") != std::string::npos);
}

TEST_CASE("usage and parse failures exit with code 2") {
    CHECK(run_cli("run no_such_file.json").exit_code == 2);
    CHECK(run_cli("run cli_ni3.json --mode sideways").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("gen --family unknown --lambda 1/2").exit_code == 2);
    CHECK(run_cli("gen --family cycle --size 1 --lambda 1/2").exit_code == 2);
    CHECK(run_cli("gen --family no-ibe --degree 3 --lambda 5/3").exit_code == 2);

    std::ofstream bad("cli_bad.json");
    bad << "{\"resources\": [\"q1\"]}";
    bad.close();
    CHECK(run_cli("run cli_bad.json").exit_code == 2);
}

TEST_CASE("reports are byte-identical across repeated seeded runs") {
    const std::string args = "run cli_ni3.json --mode ib --scheduler random --seed 42";
    auto first = run_cli(args);
    auto second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(report_of(first)["outcome"] == "step-limit");

    // Different seeds may legally differ, but each must be self-consistent.
    auto other = run_cli("run cli_ni3.json --mode ib --scheduler random --seed 43");
    CHECK(report_of(other)["outcome"] == "step-limit");
}

TEST_CASE("gen without an output path streams the instance to stdout") {
    auto r = run_cli("gen --family no-iae-tree --lambda 3/5 --slope 1");
    REQUIRE(r.exit_code == 0);
    const json inst = json::parse(r.output);
    CHECK(inst["resources"].size() == 4);
    CHECK(inst["agents"].size() == 9);
    CHECK(inst["lambda"] == "3/5");
}
