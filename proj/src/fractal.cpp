#include "noiselab/fractal.hpp"

#include <cmath>
#include <stdexcept>

#include "noiselab/percolation.hpp"

namespace noiselab::fractal {

GWParams gw_params(double p) {
    if (!(p > 0.25 && p < 1.0))
        throw std::invalid_argument("gw_params: supercritical regime needs p in (1/4, 1)");
    GWParams out;
    out.p = p;
    auto f = [p](double s) { return std::pow(1.0 - p + p * s, 4.0); };
    // smallest fixed point in [0,1): g(s) = f(s) - s changes sign exactly once
    double lo = 0.0, hi = 1.0 - 1e-13;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) - mid > 0)
            lo = mid;
        else
            hi = mid;
    }
    out.q = 0.5 * (lo + hi);
    out.mu = 4.0 * p * std::pow(1.0 - p + p * out.q, 3.0);
    // f'(q) via centered difference as the independent route
    double dq = 1e-5;
    out.mu_from_derivative = (f(out.q + dq) - f(out.q - dq)) / (2.0 * dq);
    out.alpha = 2.0 + std::log2(p);
    return out;
}

std::vector<double> single_survivor_sequence(int i_max, double p) {
    std::vector<double> ps(i_max + 1);
    double ext = 1.0 - p;
    ps[0] = 1.0;
    for (int j = 0; j < i_max; ++j) {
        ps[j + 1] = 4.0 * p * ps[j] * ext * ext * ext;
        ext = 1.0 - p + p * ext * ext * ext * ext;
    }
    return ps;
}

double exact_single_survivor(int i, double p) {
    if (i < 0) throw std::invalid_argument("exact_single_survivor: i >= 0");
    return single_survivor_sequence(i, p)[i];
}

FractalTree sample_fractal(int h, double p, std::uint64_t seed) {
    if (h < 0 || h > 13) throw std::invalid_argument("sample_fractal: depth 0 <= h <= 13");
    FractalTree tree;
    tree.depth = h;
    tree.p = p;
    Rng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cur{{0, 0}};
    for (int l = 1; l <= h; ++l) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> next;
        next.reserve(cur.size() * 2);
        for (auto [x, y] : cur)
            for (int dx = 0; dx < 2; ++dx)
                for (int dy = 0; dy < 2; ++dy)
                    if (rng.bernoulli(p)) next.emplace_back(2 * x + dx, 2 * y + dy);
        tree.levels.push_back(next);
        cur.swap(next);
    }
    return tree;
}

Estimate localized_prob(int m, int b, double p, std::uint64_t trials, std::uint64_t seed) {
    if (m + b > 13) throw std::invalid_argument("localized_prob: m + b <= 13");
    Rng root(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        FractalTree tree = sample_fractal(m + b, p, root.split(t).next_u64());
        static const std::vector<std::pair<std::uint32_t, std::uint32_t>> root_leaf{{0, 0}};
        const auto& leaves = tree.depth == 0 ? root_leaf : tree.levels.back();
        if (leaves.empty()) continue;
        std::uint32_t cx = leaves[0].first >> b, cy = leaves[0].second >> b;
        bool localized = true;
        for (auto [x, y] : leaves)
            if ((x >> b) != cx || (y >> b) != cy) {
                localized = false;
                break;
            }
        if (localized) ++hits;
    }
    return binomial_estimate(hits, trials, seed);
}

Estimate lower_tail(int h, double p, double threshold, std::uint64_t trials,
                    std::uint64_t seed) {
    Rng root(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        FractalTree tree = sample_fractal(h, p, root.split(t).next_u64());
        std::size_t k = tree.leaf_count();
        if (k > 0 && static_cast<double>(k) < threshold) ++hits;
    }
    return binomial_estimate(hits, trials, seed);
}

LowerTailFit lower_tail_fit(int h, double p, const std::vector<int>& radii,
                            std::uint64_t trials, std::uint64_t seed) {
    LowerTailFit fit;
    fit.radii = radii;
    GWParams gw = gw_params(p);
    fit.expected = std::log2(1.0 / gw.mu);
    Rng root(seed);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double thr = std::pow(static_cast<double>(radii[i]), gw.alpha);
        Estimate e = lower_tail(h, p, thr, trials, root.next_u64());
        fit.probs.push_back(e);
        xs.push_back(radii[i]);
        ys.push_back(e.mean);
    }
    auto [slope, se] = perc::fit_loglog_slope(xs, ys, 0);
    fit.slope = slope;
    fit.stderr_ = se;
    return fit;
}

std::vector<double> population_distribution(int h, double p, int kmax) {
    // truncated pgf: F_0(z) = z; F_{j+1}(z) = ((1-p) + p F_j(z))^4
    std::vector<double> f{0.0, 1.0};
    auto truncate = [&](std::vector<double>& v) {
        if (static_cast<int>(v.size()) > kmax + 1) v.resize(kmax + 1);
    };
    auto mul = [&](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> out(std::min<std::size_t>(a.size() + b.size() - 1, kmax + 1), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) continue;
            for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j)
                out[i + j] += a[i] * b[j];
        }
        return out;
    };
    for (int l = 0; l < h; ++l) {
        std::vector<double> g = f;
        for (double& c : g) c *= p;
        if (g.empty()) g.push_back(0.0);
        g[0] += 1.0 - p;
        std::vector<double> g2 = mul(g, g);
        f = mul(g2, g2);
        truncate(f);
    }
    f.resize(kmax + 1, 0.0);
    return f;
}

}  // namespace noiselab::fractal
