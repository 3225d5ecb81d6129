// Experiment runner CLI. `noiselab list` dumps the registry; `noiselab run
// <experiment> [flags]` executes one experiment with deterministic seeding
// and writes CSV/JSON plus a metadata sidecar.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "noiselab/experiments.hpp"

using namespace noiselab::experiments;

namespace {

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noiselab: noise sensitivity and percolation experiments"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list registered experiments");
    bool list_json = false;
    list->add_flag("--json", list_json, "machine-readable output");

    auto* run = app.add_subcommand("run", "run one experiment");
    std::string experiment, config_path, out_path, format = "csv", lattice, function, sizes_csv;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double trials_flag = -1;
    int threads = 1;
    std::vector<std::string> sets;
    run->add_option("experiment", experiment, "experiment name");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { seed = v; seed_given = true; }, "64-bit seed");
    run->add_option("--out", out_path, "output path (default stdout)");
    run->add_option("--format", format, "csv|json");
    run->add_option("--threads", threads, "worker count");
    run->add_option("--trials", trials_flag, "trial count (overrides config)");
    run->add_option("--lattice", lattice, "tri|z2");
    run->add_option("--f", function, "zoo function name");
    run->add_option("--sizes", sizes_csv, "comma-separated size list");
    run->add_option("--set", sets, "extra key=value parameters")->take_all();
    // common numeric shorthands
    std::map<std::string, double> shorthand;
    for (const char* key : {"n", "p", "eps", "rho", "x", "mesh", "arms", "rmax", "r1", "r2",
                            "r3", "R", "m", "a", "b", "depth", "imax", "T", "tmax", "steps",
                            "pmin", "pmax"}) {
        run->add_option_function<double>(
            std::string("--") + key, [&shorthand, key](double v) { shorthand[key] = v; },
            std::string("parameter ") + key);
    }

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << (list_json ? list_experiments_json() : list_experiments_text());
        return 0;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config " + config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            cfg = parse_config_json(buf.str());
        }
        if (!experiment.empty()) cfg.experiment = experiment;
        if (!lattice.empty()) cfg.lattice = lattice;
        if (!function.empty()) cfg.function = function;
        if (!sizes_csv.empty()) cfg.sizes = parse_sizes(sizes_csv);
        if (trials_flag >= 0) cfg.trials = std::uint64_t(trials_flag);
        if (seed_given)
            cfg.seed = seed;
        else if (const char* env = std::getenv("NOISELAB_SEED"); env && config_path.empty())
            cfg.seed = std::strtoull(env, nullptr, 10);
        cfg.format = format;
        cfg.threads = threads;
        for (const auto& kv : sets) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value, got " + kv);
            cfg.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        for (const auto& [k, v] : shorthand) cfg.params[k] = v;

        std::string meta;
        if (out_path.empty()) {
            run_experiment(cfg, std::cout, &meta);
            return 0;
        }
        std::string tmp = out_path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + tmp);
            try {
                run_experiment(cfg, out, &meta);
            } catch (...) {
                out.close();
                std::remove(tmp.c_str());
                throw;
            }
        }
        if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
            throw std::runtime_error("cannot move output into place");
        std::ofstream side(out_path + ".meta.json", std::ios::binary);
        side << meta;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
