#pragma once

// Randomized query algorithms: adaptive bit-querying strategies with finite
// explicit randomness (so revealment is exactly enumerable), revealment and
// cost reports, the spectral revealment bound, the cost and revealment lower
// bounds for monotone functions, and witness sizes.

#include <cstdint>
#include <memory>
#include <vector>

#include "noiselab/bitfunction.hpp"
#include "noiselab/estimate.hpp"
#include "noiselab/percolation.hpp"

namespace noiselab::alg {

struct Action {
    bool stop = false;
    int bit = -1;
    static Action query(int i) { return {false, i}; }
    static Action halt() { return {true, -1}; }
};

// Strategy contract: given the randomness index and the revealed partial
// assignment, produce the next bit to query or stop. Stopping is legal only
// once f is determined by the revealed bits (the runner enforces this).
class QueryAlgorithm {
  public:
    virtual ~QueryAlgorithm() = default;
    virtual int arity() const = 0;
    virtual std::uint64_t randomness_count() const = 0;
    virtual Action next(std::uint64_t rand_idx, std::uint32_t revealed,
                        std::uint32_t values) const = 0;
};

struct RunRecord {
    double value = 0.0;
    std::uint32_t queried = 0;
};

// Runs the strategy on omega; throws if it stops before f is determined.
RunRecord run(const QueryAlgorithm& alg, const BitFunction& f, std::uint32_t omega,
              std::uint64_t rand_idx);

struct RevealmentReport {
    int n = 0;
    bool exact = false;
    std::uint64_t trials = 0;
    std::vector<double> per_bit;  // P(i in J)
    double delta = 0.0;           // max_i
    double cost = 0.0;            // E|J|
};

// joint enumeration over (omega, randomness); needs 2^n * count manageable
RevealmentReport revealment_exact(const QueryAlgorithm& alg, const BitFunction& f);
RevealmentReport revealment_mc(const QueryAlgorithm& alg, const BitFunction& f,
                               std::uint64_t trials, std::uint64_t seed);

struct SsBoundReport {
    bool holds = true;
    int worst_level = 0;
    double worst_slack = 0.0;  // min over k of delta k |f|^2 - E_f(k)
};

// E_f(k) <= delta k ||f||^2 at every level
SsBoundReport check_ss_bound(const std::vector<double>& energy, double delta, double ef2);

struct OsOsssReport {
    double cost = 0.0;
    double delta = 0.0;
    double total_influence = 0.0;
    double variance = 0.0;
    double max_influence = 0.0;
    bool os_holds = false;    // C(A) >= I(f)^2
    bool osss_holds = false;  // delta_A >= Var(f) / (n max_i I_i)
};

// monotone PM1 f with a measured (cost, delta) pair
OsOsssReport check_os_osss(const BitFunction& f, double cost, double delta);

// smallest witness cardinality for omega (exact subset search, capped) and a
// greedy upper bound
int witness_size_exact(const BitFunction& f, std::uint32_t omega,
                       std::uint64_t step_cap = 200'000'000);
int witness_size_greedy(const BitFunction& f, std::uint32_t omega);

// --- built-in strategies ------------------------------------------------------

std::unique_ptr<QueryAlgorithm> full_scan(int n);
std::unique_ptr<QueryAlgorithm> first_bit(int n);
// query two bits chosen by the randomness, the third only on disagreement
std::unique_ptr<QueryAlgorithm> maj3_optimal();
// query in a uniformly random order until the majority is decided (odd n <= 7)
std::unique_ptr<QueryAlgorithm> majority_random_order(int n);
// deterministic block scan; stops at the first all-ones block
std::unique_ptr<QueryAlgorithm> tribes_block_scan(int n);
// recursive pair-then-tiebreak evaluation; randomness = one pair choice per
// internal node
std::unique_ptr<QueryAlgorithm> iter3maj_recursive(int depth);

// closed-form exact revealment of the deterministic tribes block scan
RevealmentReport tribes_block_scan_revealment(int n);

// --- percolation crossing algorithms -------------------------------------------

// the two-interface crossing algorithm on a window; randomness = seam row
RevealmentReport interface_crossing_revealment_mc(const perc::TriWindow& win,
                                                  std::uint64_t trials, std::uint64_t seed);
RevealmentReport interface_crossing_revealment_exact(const perc::TriWindow& win);

// radial algorithm revealment over random balls
RevealmentReport radial_revealment_mc(int r_in, int R, std::uint64_t trials,
                                      std::uint64_t seed);

}  // namespace noiselab::alg
