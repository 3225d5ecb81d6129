#include "noiselab/dynamical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noiselab/parallel.hpp"

namespace noiselab::dyn {

using perc::TriAnnulus;
using perc::TriConfig;
using perc::TriWindow;

Trajectory simulate(int n_elements, double T, std::uint64_t seed) {
    if (!(T >= 0.0)) throw std::invalid_argument("simulate: T >= 0");
    Trajectory traj;
    traj.n_elements = n_elements;
    traj.horizon = T;
    Rng root(seed);
    Rng init = root.split(0);
    traj.initial.assign((n_elements + 63) / 64, 0);
    for (int i = 0; i < n_elements; ++i)
        if (init.next_u64() & 1) traj.initial[i >> 6] |= 1ULL << (i & 63);
    for (int i = 0; i < n_elements; ++i) {
        Rng rng = root.split(1 + i);
        double t = rng.exponential();
        while (t <= T) {
            traj.events.push_back({t, i, (rng.next_u64() & 1) != 0});
            t += rng.exponential();
        }
    }
    std::sort(traj.events.begin(), traj.events.end(),
              [](const RefreshEvent& a, const RefreshEvent& b) { return a.time < b.time; });
    return traj;
}

bool origin_connected_to_ring(const TriAnnulus& ball) {
    const int R = ball.R;
    int origin = perc::tri_ball_index(R, 0, 0);
    if (!ball.is_open(origin)) return false;
    std::vector<std::uint8_t> vis(perc::tri_ball_size(R), 0);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    vis[origin] = 1;
    static const int dirs[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    while (!stack.empty()) {
        auto [q, r] = stack.back();
        stack.pop_back();
        int d = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
        if (d == R) return true;
        for (auto& dd : dirs) {
            int nq = q + dd[0], nr = r + dd[1];
            int nd = std::max({std::abs(nq), std::abs(nr), std::abs(nq + nr)});
            if (nd > R) continue;
            int idx = perc::tri_ball_index(R, nq, nr);
            if (vis[idx] || !ball.is_open(idx)) continue;
            vis[idx] = 1;
            stack.push_back({nq, nr});
        }
    }
    return false;
}

double exceptional_functional(const Trajectory& traj, int R) {
    if (traj.horizon < 1.0) throw std::invalid_argument("exceptional_functional: T >= 1 required");
    if (traj.n_elements != perc::tri_ball_size(R))
        throw std::invalid_argument("exceptional_functional: trajectory/ball size mismatch");
    TriAnnulus ball;
    ball.R = R;
    ball.open = traj.initial;
    double x = 0.0, t_prev = 0.0;
    bool connected = origin_connected_to_ring(ball);
    for (const RefreshEvent& ev : traj.events) {
        if (ev.time > 1.0) break;
        bool cur = ball.is_open(ev.element);
        if (cur == ev.new_open) continue;  // resample kept the state
        if (connected) x += ev.time - t_prev;
        t_prev = ev.time;
        if (ev.new_open)
            ball.open[ev.element >> 6] |= 1ULL << (ev.element & 63);
        else
            ball.open[ev.element >> 6] &= ~(1ULL << (ev.element & 63));
        connected = origin_connected_to_ring(ball);
    }
    if (connected) x += 1.0 - t_prev;
    return x;
}

double exceptional_functional_grid(const Trajectory& traj, int R, double dt) {
    TriAnnulus ball;
    ball.R = R;
    ball.open = traj.initial;
    std::size_t next_event = 0;
    double x = 0.0;
    for (double t = 0.0; t < 1.0; t += dt) {
        while (next_event < traj.events.size() && traj.events[next_event].time <= t) {
            const RefreshEvent& ev = traj.events[next_event++];
            if (ev.new_open)
                ball.open[ev.element >> 6] |= 1ULL << (ev.element & 63);
            else
                ball.open[ev.element >> 6] &= ~(1ULL << (ev.element & 63));
        }
        if (origin_connected_to_ring(ball)) x += dt;
    }
    return x;
}

Estimate alpha1_origin(int R, std::uint64_t trials, std::uint64_t seed) {
    Rng root(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        TriAnnulus ball = perc::sample_tri_ball(R, 0.5, root.split(t).next_u64());
        if (origin_connected_to_ring(ball)) ++hits;
    }
    return binomial_estimate(hits, trials, seed);
}

Estimate mean_xr(int R, std::uint64_t trials, std::uint64_t seed, int threads) {
    Rng root(seed);
    std::vector<double> xs;
    parallel_fill(trials, threads, xs, [&](std::uint64_t t) {
        Trajectory traj = simulate(perc::tri_ball_size(R), 1.0, root.split(t).next_u64());
        return exceptional_functional(traj, R);
    });
    double sum = 0, sumsq = 0;
    for (double x : xs) {
        sum += x;
        sumsq += x * x;
    }
    return mean_estimate(sum, sumsq, trials, seed);
}

SecondMomentReport second_moment_ratio(int R, std::uint64_t trials, std::uint64_t seed,
                                       int threads) {
    Rng root(seed);
    std::vector<double> xs;
    parallel_fill(trials, threads, xs, [&](std::uint64_t t) {
        Trajectory traj = simulate(perc::tri_ball_size(R), 1.0, root.split(t).next_u64());
        return exceptional_functional(traj, R);
    });
    double sum = 0, sumsq = 0;
    for (double x : xs) {
        sum += x;
        sumsq += x * x;
    }
    SecondMomentReport rep;
    rep.mean = mean_estimate(sum, sumsq, trials, seed);
    double n = static_cast<double>(trials);
    rep.second = sumsq / n;
    if (rep.mean.mean <= 3 * rep.mean.stderr_) {
        rep.defined = false;  // E[X] consistent with 0: ratio undefined
        return rep;
    }
    rep.defined = true;
    rep.ratio = rep.second / (rep.mean.mean * rep.mean.mean);
    Rng boot(seed ^ 0xb00157ULL);
    const int B = 200;
    std::vector<double> ratios;
    ratios.reserve(B);
    for (int b = 0; b < B; ++b) {
        double s1 = 0, s2 = 0;
        for (std::uint64_t k = 0; k < trials; ++k) {
            double v = xs[boot.below(trials)];
            s1 += v;
            s2 += v * v;
        }
        double m = s1 / n;
        if (m > 0) ratios.push_back((s2 / n) / (m * m));
    }
    double bm = 0, bv = 0;
    for (double v : ratios) bm += v;
    bm /= ratios.size();
    for (double v : ratios) bv += (v - bm) * (v - bm);
    rep.ratio_stderr = std::sqrt(bv / ratios.size());
    return rep;
}

SwitchCount switch_count(const Trajectory& traj, const TriWindow& win) {
    if (traj.n_elements != win.size())
        throw std::invalid_argument("switch_count: trajectory/window size mismatch");
    SwitchCount out;
    TriConfig cfg;
    cfg.win = win;
    cfg.open = traj.initial;
    bool crossing = perc::tri_crossing_lr_open(cfg);
    for (const RefreshEvent& ev : traj.events) {
        bool cur = cfg.is_open(ev.element);
        if (cur == ev.new_open) continue;
        cfg.set_open(ev.element, ev.new_open);
        bool now = perc::tri_crossing_lr_open(cfg);
        if (now != crossing) {
            ++out.switches;
            // the flipped element must have been pivotal just before
            cfg.set_open(ev.element, cur);
            std::vector<int> piv = perc::pivotal_sites_tri(cfg);
            if (std::find(piv.begin(), piv.end(), ev.element) == piv.end())
                out.switches_were_pivotal = false;
            cfg.set_open(ev.element, ev.new_open);
        }
        crossing = now;
    }
    return out;
}

std::vector<int> switch_samples(int n, std::uint64_t trials, std::uint64_t seed,
                                int threads) {
    TriWindow win{n, n};
    Rng root(seed);
    std::vector<double> tmp;
    parallel_fill(trials, threads, tmp, [&](std::uint64_t t) {
        Trajectory traj = simulate(win.size(), 1.0, root.split(t).next_u64());
        return double(switch_count(traj, win).switches);
    });
    std::vector<int> out(trials);
    for (std::uint64_t t = 0; t < trials; ++t) out[t] = int(tmp[t]);
    return out;
}

std::vector<CorrelationPoint> time_correlation(const TriWindow& win,
                                               const std::vector<double>& t_grid,
                                               std::uint64_t trials, std::uint64_t seed) {
    double horizon = 0.0;
    for (double t : t_grid) horizon = std::max(horizon, t);
    Rng root(seed);
    std::vector<double> sum(t_grid.size(), 0.0), sumsq(t_grid.size(), 0.0);
    std::vector<std::size_t> order(t_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });
    for (std::uint64_t t = 0; t < trials; ++t) {
        Trajectory traj = simulate(win.size(), horizon, root.split(t).next_u64());
        TriConfig cfg;
        cfg.win = win;
        cfg.open = traj.initial;
        double f0 = perc::tri_crossing_lr_open(cfg) ? 1.0 : 0.0;
        std::size_t next_event = 0;
        for (std::size_t oi : order) {
            while (next_event < traj.events.size() &&
                   traj.events[next_event].time <= t_grid[oi]) {
                const RefreshEvent& ev = traj.events[next_event++];
                cfg.set_open(ev.element, ev.new_open);
            }
            double ft = perc::tri_crossing_lr_open(cfg) ? 1.0 : 0.0;
            double v = f0 * ft;
            sum[oi] += v;
            sumsq[oi] += v * v;
        }
    }
    std::vector<CorrelationPoint> out;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        out.push_back({t_grid[i], mean_estimate(sum[i], sumsq[i], trials, seed)});
    return out;
}

}  // namespace noiselab::dyn
