#pragma once

// Experiment registry: named experiments binding module operations to
// configurations, with deterministic seeding and structured CSV/JSON output.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace noiselab::experiments {

struct ExperimentSpec {
    std::string name;
    std::string description;
    std::vector<std::string> required;  // parameter names
};

struct RunConfig {
    std::string experiment;
    std::string lattice = "tri";               // tri | z2
    std::string function = "maj";              // zoo function name where relevant
    std::vector<int> sizes;                    // generic size list
    std::map<std::string, double> params;      // numeric parameters
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::string format = "csv";                // csv | json
    int threads = 1;
};

const std::vector<ExperimentSpec>& registry();
std::string list_experiments_text();
std::string list_experiments_json();

// Runs one experiment, writing the (deterministic) data to `out` and filling
// `meta_json` with the run metadata sidecar. Throws on unknown experiments or
// invalid parameters.
void run_experiment(const RunConfig& cfg, std::ostream& out, std::string* meta_json);

// JSON config file support: {experiment, lattice, function, sizes[], p, eps,
// ..., trials, seed}
RunConfig parse_config_json(const std::string& text);

// version stamp recorded in metadata sidecars
const char* tool_version();

}  // namespace noiselab::experiments
