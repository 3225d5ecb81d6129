#pragma once

// First-passage percolation on the 2-torus with two-valued edge weights:
// shortest winding circumference (exact, via shortest paths on the cut-open
// strip), fluctuation experiments and geodesic edge statistics under an
// invariant uniform tie-break.

#include <cstdint>
#include <vector>

#include "noiselab/estimate.hpp"
#include "noiselab/rng.hpp"

namespace noiselab::fpp {

struct TorusWeights {
    int m = 4;
    double a = 1.0, b = 2.0;
    std::vector<std::uint64_t> heavy;  // bit per edge: 1 -> weight b
    // edges: horizontal (x,y)->(x+1 mod m, y) id = y*m+x; vertical
    // (x,y)->(x,y+1 mod m) id = m*m + y*m + x
    int n_edges() const { return 2 * m * m; }
    bool is_heavy(int e) const { return heavy[e >> 6] >> (e & 63) & 1; }
    double weight(int e) const { return is_heavy(e) ? b : a; }
};

TorusWeights sample_weights(int m, double a, double b, std::uint64_t seed);

struct Circumference {
    double value = 0.0;
    std::vector<int> geodesic;  // torus edge ids of the tie-broken geodesic
};

// Minimum total weight over cycles with first-coordinate winding number 1.
// The geodesic is the unique minimizer under an invariant uniform tie-break
// (independent per-edge perturbations of size 1e-9 a).
Circumference shortest_circumference(const TorusWeights& w, std::uint64_t tiebreak_seed = 1);

// Value-only fast path (no tie-breaking, integer weights required).
double shortest_circumference_value(const TorusWeights& w);

struct FluctuationRow {
    int m = 0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;
    double var_stderr = 0.0;  // bootstrap
    double kesten_ratio = 0.0;   // Var / m
    double bks_ratio = 0.0;      // Var log m / m
};

FluctuationRow fluctuation_row(int m, double a, double b, std::uint64_t trials,
                               std::uint64_t seed, int threads = 1);
std::vector<FluctuationRow> fluctuation_experiment(const std::vector<int>& m_list, double a,
                                                   double b, std::uint64_t trials,
                                                   std::uint64_t seed, int threads = 1);

struct GeodesicStats {
    int m = 0;
    std::uint64_t trials = 0;
    std::vector<double> edge_freq;   // P(e in geodesic) per torus edge
    double vertical_freq_sum = 0.0;  // sum over vertical edges
    double mean_length = 0.0;        // E |geodesic|
};

GeodesicStats geodesic_edge_stats(int m, double a, double b, std::uint64_t trials,
                                  std::uint64_t seed);

}  // namespace noiselab::fpp
