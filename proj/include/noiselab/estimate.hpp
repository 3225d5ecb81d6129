#pragma once

#include <cmath>
#include <cstdint>

namespace noiselab {

// A Monte Carlo result with its provenance.
struct Estimate {
    double mean = 0.0;
    std::uint64_t trials = 0;
    double stderr_ = 0.0;
    std::uint64_t seed = 0;

    double lo(double k = 3.0) const { return mean - k * stderr_; }
    double hi(double k = 3.0) const { return mean + k * stderr_; }

    // |mean - value| within k combined standard errors
    bool consistent_with(double value, double k = 3.0) const {
        return std::abs(mean - value) <= k * stderr_;
    }
};

// Estimate of a probability from a hit count.
inline Estimate binomial_estimate(std::uint64_t hits, std::uint64_t trials,
                                  std::uint64_t seed) {
    Estimate e;
    e.trials = trials;
    e.seed = seed;
    e.mean = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    e.stderr_ = trials ? std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials)) : 0.0;
    return e;
}

// Estimate of a mean from accumulated sum and sum of squares.
inline Estimate mean_estimate(double sum, double sumsq, std::uint64_t trials,
                              std::uint64_t seed) {
    Estimate e;
    e.trials = trials;
    e.seed = seed;
    if (trials == 0) return e;
    double n = static_cast<double>(trials);
    e.mean = sum / n;
    double var = (sumsq - n * e.mean * e.mean) / (n > 1 ? n - 1 : 1);
    if (var < 0) var = 0;
    e.stderr_ = std::sqrt(var / n);
    return e;
}

}  // namespace noiselab
