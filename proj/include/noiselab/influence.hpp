#pragma once

// Pivotal sets, influences at any level p, set influence, the Russo
// derivative check, edge-boundary identity and the inequality diagnostics
// (Poincare, sqrt(n) bound for monotone functions, KKL ratio).

#include <cstdint>
#include <optional>
#include <vector>

#include "noiselab/bitfunction.hpp"
#include "noiselab/estimate.hpp"

namespace noiselab {

struct InfluenceVector {
    double p = 0.5;
    bool exact = true;
    std::vector<double> values;          // I_i^p(f)
    std::vector<double> stderrs;         // empty in exact mode

    double total() const;                // I(f) = sum_i I_i
    double h() const;                    // H(f) = sum_i I_i^2
    double max() const;
};

// {i : f(omega) != f(omega^i)} as a packed mask (n <= 32) plus vector form.
std::uint32_t pivotal_set_mask(const BitFunction& f, std::uint32_t omega_mask);
std::vector<int> pivotal_set(const BitFunction& f, const Configuration& omega);

// Exact influence of bit i at level p: sums P_p over the 2^{n-1} off-i
// assignments where i is pivotal.
double influence_exact(const BitFunction& f, int i, double p = 0.5);
InfluenceVector influence_vector_exact(const BitFunction& f, double p = 0.5);

Estimate influence_mc(const BitFunction& f, int i, double p, std::uint64_t trials,
                      std::uint64_t seed);
InfluenceVector influence_vector_mc(const BitFunction& f, double p, std::uint64_t trials,
                                    std::uint64_t seed);

// P(f is not determined by the bits in S^c); reduces to I_i for S = {i}.
double set_influence_exact(const BitFunction& f, std::uint32_t s_mask);

// MC mode: decides non-constancy on each sampled fiber by the monotone
// two-point trick when f is declared monotone, otherwise by enumerating the
// fiber (requires |S| small).
Estimate set_influence_mc(const BitFunction& f, const std::vector<int>& s_bits, bool monotone,
                          std::uint64_t trials, std::uint64_t seed);

// E_p[f] for ZO f, exact sum over the table.
double expectation_at_p(const BitFunction& f, double p);

// Monotonicity: exact edge scan for table backing (n <= 20 recommended);
// randomized edge audit for oracles (false negatives possible, declared).
bool is_monotone(const BitFunction& f);
bool is_monotone_sampled(const BitFunction& f, std::uint64_t samples, std::uint64_t seed);

struct RussoCheck {
    double slope = 0.0;          // centered finite difference of E_p
    double total_influence = 0.0;  // sum_i I_i^p
    double gap = 0.0;            // |slope - total_influence|
};

// Margulis-Russo: d/dp E_p[f] = sum_i I_i^p for monotone ZO f. Exact mode,
// centered difference with step dp.
RussoCheck russo_check(const BitFunction& f, double p, double dp = 1e-3);

// |edge boundary of A_f| in the hypercube graph; ZO exact mode. The identity
// I(f) = |boundary| / 2^{n-1} holds exactly.
std::uint64_t edge_boundary(const BitFunction& f);

struct InequalityDiagnostics {
    double variance = 0.0;
    double total_influence = 0.0;
    double max_influence = 0.0;
    bool poincare_holds = false;        // Var(f) <= I(f)
    bool sqrt_n_applicable = false;     // monotone PM1
    bool sqrt_n_holds = false;          // I(f) <= sqrt(n)
    double kkl_ratio = 0.0;             // max_i I_i / (Var * log n / n), reported only
};

InequalityDiagnostics inequality_diagnostics(const BitFunction& f);

struct ThresholdPoint {
    double p = 0.0;
    Estimate value;
};

struct ThresholdCurve {
    std::vector<ThresholdPoint> points;
    // p(0.9) - p(0.1) by monotone linear interpolation; nullopt if the curve
    // does not straddle both levels.
    std::optional<double> window_width() const;
};

ThresholdCurve threshold_curve(const BitFunction& f, const std::vector<double>& p_grid,
                               std::uint64_t trials, std::uint64_t seed);

// Var(f) under the uniform measure, exact.
double variance_exact(const BitFunction& f);

}  // namespace noiselab
