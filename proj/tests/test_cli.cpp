#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "noiselab/experiments.hpp"

using namespace noiselab::experiments;

namespace {

std::string cli_path() {
    const char* p = std::getenv("NOISELAB_CLI");
    return p ? p : "";
}

int run_cli(const std::string& args, const std::string& out_file = "") {
    std::string cmd = cli_path() + " " + args;
    if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
    else cmd += " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("registry lists the canonical experiments in stable order") {
    std::string text = list_experiments_text();
    for (const char* name : {"cardy", "arm-exponents", "revealment", "dynamical-xr",
                             "fractal-lower-tail", "fpp-variance"})
        CHECK(text.find(name) != std::string::npos);
    CHECK(list_experiments_text() == text);  // stable
    std::string js = list_experiments_json();
    CHECK(js.find("\"name\"") != std::string::npos);
}

TEST_CASE("run_experiment: determinism incl. worker count") {
    RunConfig cfg;
    cfg.experiment = "quasi-mult";
    cfg.params = {{"r1", 2}, {"r2", 4}, {"r3", 8}};
    cfg.trials = 2000;
    cfg.seed = 5;
    std::ostringstream a, b, c;
    run_experiment(cfg, a, nullptr);
    run_experiment(cfg, b, nullptr);
    cfg.threads = 2;
    run_experiment(cfg, c, nullptr);
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
}

TEST_CASE("unknown experiments and missing parameters are rejected") {
    RunConfig cfg;
    cfg.experiment = "no-such-thing";
    std::ostringstream os;
    CHECK_THROWS(run_experiment(cfg, os, nullptr));
    RunConfig cfg2;
    cfg2.experiment = "quasi-mult";  // requires r1, r2, r3
    CHECK_THROWS(run_experiment(cfg2, os, nullptr));
}

TEST_CASE("json config parsing") {
    RunConfig cfg = parse_config_json(
        R"({"experiment":"crossing","lattice":"z2","sizes":[4,8],"p":0.5,"trials":100,"seed":3})");
    CHECK(cfg.experiment == "crossing");
    CHECK(cfg.lattice == "z2");
    CHECK(cfg.sizes == std::vector<int>{4, 8});
    CHECK(cfg.params.at("p") == 0.5);
    CHECK(cfg.trials == 100);
    CHECK(cfg.seed == 3);
    std::ostringstream os;
    run_experiment(cfg, os, nullptr);
    CHECK(os.str().find("crossing,z2,4,") != std::string::npos);
}

TEST_CASE("cli binary: list, run, byte-identical reruns, sidecar") {
    if (cli_path().empty()) {
        MESSAGE("NOISELAB_CLI not set; skipping binary tests");
        return;
    }
    CHECK(run_cli("list", "/tmp/noiselab_list.txt") == 0);
    std::string listing = slurp("/tmp/noiselab_list.txt");
    CHECK(listing.find("cardy") != std::string::npos);

    CHECK(run_cli("run spectrum-zoo --f maj --n 9 --seed 4 --out /tmp/nl_a.csv") == 0);
    CHECK(run_cli("run spectrum-zoo --f maj --n 9 --seed 4 --out /tmp/nl_b.csv") == 0);
    std::string a = slurp("/tmp/nl_a.csv"), b = slurp("/tmp/nl_b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(!slurp("/tmp/nl_a.csv.meta.json").empty());

    CHECK(run_cli("run no-such-experiment") != 0);

    // env seed fallback produces the same bytes as the explicit flag
    CHECK(std::system((std::string("NOISELAB_SEED=4 ") + cli_path() +
                       " run spectrum-zoo --f maj --n 9 --out /tmp/nl_c.csv >/dev/null 2>&1")
                          .c_str()) == 0);
    CHECK(slurp("/tmp/nl_c.csv") == a);
}
