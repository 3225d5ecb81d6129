#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "noiselab/dynamical.hpp"
#include "noiselab/spectral.hpp"

using namespace noiselab;
using namespace noiselab::dyn;

TEST_CASE("simulate: Poisson event counts and stationary marginals") {
    const int n = 200;
    const double T = 2.0;
    Rng seeds(1);
    double events = 0;
    int trials = 200;
    for (int t = 0; t < trials; ++t)
        events += double(simulate(n, T, seeds.next_u64()).events.size());
    events /= trials;
    double expect = n * T;
    double sigma = std::sqrt(expect / trials);
    CHECK(std::abs(events - expect) <= 4 * sigma);

    CHECK(simulate(50, 0.0, 3).events.empty());

    // marginal at t = T/2 is fair: evolve to T/2 and count open elements
    int open = 0, total = 0;
    for (int t = 0; t < 300; ++t) {
        Trajectory traj = simulate(n, 1.0, seeds.next_u64());
        std::vector<std::uint64_t> state = traj.initial;
        for (const auto& ev : traj.events) {
            if (ev.time > 0.5) break;
            if (ev.new_open)
                state[ev.element >> 6] |= 1ULL << (ev.element & 63);
            else
                state[ev.element >> 6] &= ~(1ULL << (ev.element & 63));
        }
        for (int i = 0; i < n; ++i, ++total) open += (state[i >> 6] >> (i & 63)) & 1;
    }
    double frac = double(open) / total;
    CHECK(std::abs(frac - 0.5) <= 4 * 0.5 / std::sqrt(double(total)));
}

TEST_CASE("event times strictly increase") {
    Trajectory traj = simulate(100, 1.0, 9);
    for (std::size_t i = 1; i < traj.events.size(); ++i)
        CHECK(traj.events[i].time > traj.events[i - 1].time);
}

TEST_CASE("X_R basics: range, silent clocks") {
    const int R = 5;
    Trajectory traj = simulate(perc::tri_ball_size(R), 1.0, 11);
    double x = exceptional_functional(traj, R);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
    // silence the clocks: X is the time-0 indicator
    Trajectory silent = traj;
    silent.events.clear();
    perc::TriAnnulus ball;
    ball.R = R;
    ball.open = traj.initial;
    double expect = origin_connected_to_ring(ball) ? 1.0 : 0.0;
    CHECK(exceptional_functional(silent, R) == doctest::Approx(expect));
}

TEST_CASE("Fubini: E[X_R] equals the static one-arm probability") {
    const int R = 6;
    Estimate ex = mean_xr(R, 1500, 21);
    Estimate a1 = alpha1_origin(R, 20000, 22);
    double sigma = std::sqrt(ex.stderr_ * ex.stderr_ + a1.stderr_ * a1.stderr_);
    CHECK(std::abs(ex.mean - a1.mean) <= 3 * sigma);
}

TEST_CASE("exact event integration matches the fine time grid") {
    const int R = 2;
    Rng seeds(31);
    for (int t = 0; t < 40; ++t) {
        Trajectory traj = simulate(perc::tri_ball_size(R), 1.0, seeds.next_u64());
        double exact = exceptional_functional(traj, R);
        double grid = exceptional_functional_grid(traj, R, 1e-3);
        CHECK(std::abs(exact - grid) <= 1e-3 * (double(traj.events.size()) + 1.0));
    }
}

TEST_CASE("second moment ratio: at least 1, bounded at desk scale") {
    SecondMomentReport rep = second_moment_ratio(8, 800, 41);
    REQUIRE(rep.defined);
    CHECK(rep.ratio >= 1.0 - 1e-9);
    CHECK(rep.ratio < 50.0);
    CHECK(rep.ratio_stderr > 0.0);
}

TEST_CASE("switch counts: zero without events, pivotal coincidence") {
    perc::TriWindow win{8, 8};
    Trajectory traj = simulate(win.size(), 1.0, 51);
    traj.events.clear();
    CHECK(switch_count(traj, win).switches == 0);
    Rng seeds(52);
    for (int t = 0; t < 60; ++t) {
        Trajectory tr = simulate(win.size(), 1.0, seeds.next_u64());
        SwitchCount sc = switch_count(tr, win);
        CHECK(sc.switches_were_pivotal);
    }
}

TEST_CASE("median switch count grows with the window") {
    auto median = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    auto s6 = switch_samples(6, 300, 61);
    auto s14 = switch_samples(14, 300, 62);
    CHECK(median(s14) > median(s6));
}

TEST_CASE("time correlation: endpoints and the spectral identity on a 2x2 window") {
    perc::TriWindow win{2, 2};
    // crossing function as an exact table over the 4 sites
    std::vector<double> table(16);
    for (std::uint32_t m = 0; m < 16; ++m) {
        perc::TriConfig cfg;
        cfg.win = win;
        cfg.open.assign(1, m);
        table[m] = perc::tri_crossing_lr_open(cfg) ? 1.0 : 0.0;
    }
    BitFunction f = BitFunction::from_table(4, Range::ZO, table);
    SpectrumTable spec = walsh_transform(f);

    std::vector<double> grid{0.0, 0.2, 0.5, 1.0, 2.0};
    auto curve = time_correlation(win, grid, 40000, 71);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double eps = 1.0 - std::exp(-grid[i]);
        double expect = correlation_exact(spec, eps);
        CHECK(std::abs(curve[i].value.mean - expect) <= 4 * curve[i].value.stderr_ + 1e-12);
    }
    // t = 0 is E[f^2]; the curve is non-increasing within noise
    CHECK(curve[0].value.mean == doctest::Approx(correlation_exact(spec, 0.0)).epsilon(0.05));
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].value.mean <=
              curve[i - 1].value.mean + 4 * (curve[i].value.stderr_ + curve[i - 1].value.stderr_));
}

TEST_CASE("time correlation mixes to E[f]^2 for large t") {
    perc::TriWindow win{4, 4};
    std::vector<double> grid{8.0};
    auto curve = time_correlation(win, grid, 30000, 81);
    Estimate pc = perc::crossing_probability_tri(win, 0.5, 30000, 82);
    double expect = pc.mean * pc.mean;
    double sigma = curve[0].value.stderr_ + 2 * pc.stderr_;
    CHECK(std::abs(curve[0].value.mean - expect) <= 4 * sigma);
}
