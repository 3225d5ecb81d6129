#pragma once

// Fractal percolation on dyadic squares: exact single-survivor recursions
// and Galton-Watson parameters, sparse sampling, localized-population
// probabilities and lower tails, plus an exact truncated-pgf oracle for the
// full population distribution at moderate depth.

#include <cstdint>
#include <vector>

#include "noiselab/estimate.hpp"
#include "noiselab/rng.hpp"

namespace noiselab::fractal {

struct GWParams {
    double p = 0.5;
    double q = 0.0;      // extinction probability, root of (1-p+ps)^4 = s in [0,1)
    double mu = 0.0;     // decay rate 4p(1-p+pq)^3 = f'(q), in (0,1)
    double alpha = 0.0;  // fractal dimension 2 + log2 p
    double mu_from_derivative = 0.0;  // f'(q) evaluated independently
};

GWParams gw_params(double p);  // requires p in (1/4, 1)

// p_i = P(|T^i| = 1): recursion p_0 = 1, p_{j+1} = 4 p p_j ext_j^3 with
// ext_0 = 1-p, ext_{j+1} = 1-p + p ext_j^4.
double exact_single_survivor(int i, double p);
std::vector<double> single_survivor_sequence(int i_max, double p);

struct FractalTree {
    int depth = 0;
    double p = 0.5;
    // retained squares per level; level l squares have coordinates in [0, 2^l)^2
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> levels;
    std::size_t leaf_count() const { return levels.empty() ? 1 : levels.back().size(); }
};

FractalTree sample_fractal(int h, double p, std::uint64_t seed);  // h <= 13

// P(T^{m+b} nonempty and contained in a single dyadic square of size 2^b)
Estimate localized_prob(int m, int b, double p, std::uint64_t trials, std::uint64_t seed);

// P(0 < |T^h| < threshold)
Estimate lower_tail(int h, double p, double threshold, std::uint64_t trials,
                    std::uint64_t seed);

struct LowerTailFit {
    std::vector<int> radii;
    std::vector<Estimate> probs;
    double slope = 0.0;    // d log P / d log r
    double stderr_ = 0.0;
    double expected = 0.0;  // log2(1/mu)
};
LowerTailFit lower_tail_fit(int h, double p, const std::vector<int>& radii,
                            std::uint64_t trials, std::uint64_t seed);

// exact distribution P(|T^h| = k) for k = 0..kmax by truncated pgf iteration
std::vector<double> population_distribution(int h, double p, int kmax);

}  // namespace noiselab::fractal
