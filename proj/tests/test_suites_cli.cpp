#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hardylab/suites.hpp"

using namespace hardylab;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HARDYLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

SuiteOptions quick_options(std::uint64_t seed) {
    SuiteOptions opt;
    opt.seed = seed;
    opt.profiles_per_form = 3;
    opt.identity_cases = 6;
    opt.recursion_tuples = 3;
    opt.transplant_cases = 3;
    opt.variational_mesh = 256;
    opt.el_mesh = 1024;
    return opt;
}

}  // namespace

TEST_CASE("suite reports are deterministic under a fixed seed", "[cli]") {
    SuiteOptions opt = quick_options(7);
    const std::string a = run_suite("identity", opt).to_json().dump(2);
    const std::string b = run_suite("identity", opt).to_json().dump(2);
    CHECK(a == b);
    opt.jobs = 1;
    const std::string c = run_suite("identity", opt).to_json().dump(2);
    CHECK(a == c);  // order-stable regardless of the worker pool

    SuiteOptions other = quick_options(8);
    CHECK(run_suite("identity", other).to_json().dump(2) != a);
}

TEST_CASE("every named suite passes on a quick corpus", "[cli]") {
    SuiteOptions opt = quick_options(7);
    for (const auto& name : suite_names()) {
        SuiteReport rep = run_suite(name, opt);
        INFO(name << ": " << rep.to_json().dump(2).substr(0, 600));
        CHECK(rep.all_pass());
        const json j = rep.to_json();
        CHECK(j["schema"] == "hardylab/1");
        CHECK(j["seed"] == 7);
    }
    CHECK_THROWS_AS(run_suite("nope", opt), std::invalid_argument);
}

TEST_CASE("constant subcommand", "[cli]") {
    auto r = run_cli("constant --form classical-hardy -N 5 -p 2 --alpha 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("2.25") != std::string::npos);

    r = run_cli("constant --form improved-rellich-b-p2 -N 8 --alpha 3 --gamma 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.5625") != std::string::npos);

    r = run_cli("constant --form improved-hardy -p 2 --beta 2 --gamma 0");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("gamma > 0 required") != std::string::npos);

    r = run_cli("constant --form no-such-form");
    CHECK(r.exit_code == 2);

    r = run_cli("constant --t-rad -N 3 -p 2 -q 4 --alpha 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("2.8944") != std::string::npos);
}

TEST_CASE("verify subcommand: exit codes and byte-identical reports", "[cli]") {
    const std::string report1 = "cli_report_a.json";
    const std::string report2 = "cli_report_b.json";
    const std::string flags =
        "verify identity --seed 7 --identity-cases 6 --cases 3 -o ";
    auto r1 = run_cli(flags + report1);
    CHECK(r1.exit_code == 0);
    auto r2 = run_cli(flags + report2);
    CHECK(r2.exit_code == 0);
    const std::string j1 = slurp(report1), j2 = slurp(report2);
    CHECK(!j1.empty());
    CHECK(j1 == j2);  // identical configs produce byte-identical reports
    CHECK(j1.find("\"schema\": \"hardylab/1\"") != std::string::npos);
    std::remove(report1.c_str());
    std::remove(report2.c_str());

    auto bad = run_cli("verify no-such-suite");
    CHECK(bad.exit_code == 2);

    // seed default through the environment
    auto env = run_cli("verify recursion --identity-cases 3");
    CHECK(env.exit_code == 0);
}

TEST_CASE("verify variational --form el prints the eigenvalue sweep", "[cli]") {
    auto r = run_cli("verify variational --form el --gamma 1 -N 3 --el-mesh 1024");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lambda1") != std::string::npos);
    CHECK(r.out.find("0.25") != std::string::npos);  // the (gamma/2)^2 limit line
}

TEST_CASE("sweep subcommand", "[cli]") {
    auto r = run_cli(
        "sweep --form improved-hardy --param A --values 0.6,0.55,0.51 -N 3 -p 2 --alpha 1 "
        "--beta 2 --gamma 2 --delta 0.05");
    CHECK(r.exit_code == 0);
    // gap column decreasing along the sweep
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line.find("relative_gap") != std::string::npos);
    double prev_gap = 1e300;
    int rows = 0;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 5);
        const double gap = std::stod(cells[4]);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        ++rows;
    }
    CHECK(rows == 3);

    auto empty = run_cli("sweep --form improved-hardy --param A --values ,");
    CHECK(empty.exit_code == 2);

    auto unknown = run_cli("sweep --form improved-hardy --param Z --values 1,2");
    CHECK(unknown.exit_code == 2);
}
