#pragma once

// Dynamical percolation on finite triangular-lattice regions: Poisson
// refresh clocks at rate 1 per element, the exceptional-time functional
// X_R, crossing switch counts S_R, and time correlations matched against
// the spectral formula with eps = 1 - e^{-t}.

#include <cstdint>
#include <vector>

#include "noiselab/estimate.hpp"
#include "noiselab/percolation.hpp"

namespace noiselab::dyn {

struct RefreshEvent {
    double time;
    int element;
    bool new_open;
};

struct Trajectory {
    int n_elements = 0;
    double horizon = 0.0;
    std::vector<std::uint64_t> initial;  // stationary configuration at t = 0
    std::vector<RefreshEvent> events;    // sorted by time
};

// rate-1 refresh per element (refresh = fair resample), horizon T
Trajectory simulate(int n_elements, double T, std::uint64_t seed);

// X_R = Lebesgue measure of {t in [0,1] : 0 <-> ring R in omega_t},
// integrated exactly between events; connectivity recomputed at every
// state-changing event.
double exceptional_functional(const Trajectory& traj, int R);

// fine time-grid oracle for the same quantity (tiny R only)
double exceptional_functional_grid(const Trajectory& traj, int R, double dt);

// static one-arm probability P(0 <-> ring R) for the Fubini check
Estimate alpha1_origin(int R, std::uint64_t trials, std::uint64_t seed);

// E[X_R] estimate over independent trajectories
Estimate mean_xr(int R, std::uint64_t trials, std::uint64_t seed, int threads = 1);

struct SecondMomentReport {
    Estimate mean;       // E[X_R]
    double second = 0.0;  // E[X_R^2]
    double ratio = 0.0;   // E[X^2]/E[X]^2
    double ratio_stderr = 0.0;  // bootstrap
    bool defined = false;
};

SecondMomentReport second_moment_ratio(int R, std::uint64_t trials, std::uint64_t seed,
                                       int threads = 1);

// number of crossing-indicator changes on the n x n window during [0, T];
// checks that every switch coincides with a refresh of a pivotal element
struct SwitchCount {
    int switches = 0;
    bool switches_were_pivotal = true;
};
SwitchCount switch_count(const Trajectory& traj, const perc::TriWindow& win);

std::vector<int> switch_samples(int n, std::uint64_t trials, std::uint64_t seed,
                                int threads = 1);

// curve E[f(omega_0) f(omega_t)] for the crossing indicator on the window
struct CorrelationPoint {
    double t = 0.0;
    Estimate value;
};
std::vector<CorrelationPoint> time_correlation(const perc::TriWindow& win,
                                               const std::vector<double>& t_grid,
                                               std::uint64_t trials, std::uint64_t seed);

// connectivity 0 <-> ring R evaluated on a ball configuration
bool origin_connected_to_ring(const perc::TriAnnulus& ball);

}  // namespace noiselab::dyn
