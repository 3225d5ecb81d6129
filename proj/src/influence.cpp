#include "noiselab/influence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noiselab {

double InfluenceVector::total() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double InfluenceVector::h() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
}

double InfluenceVector::max() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::uint32_t pivotal_set_mask(const BitFunction& f, std::uint32_t omega_mask) {
    const BitFunction g = f.exact() ? f : f.materialize();
    std::uint32_t piv = 0;
    double fv = g.at(omega_mask);
    for (int i = 0; i < g.arity(); ++i)
        if (g.at(omega_mask ^ (1u << i)) != fv) piv |= 1u << i;
    return piv;
}

std::vector<int> pivotal_set(const BitFunction& f, const Configuration& omega) {
    std::vector<int> out;
    double fv = f(omega);
    for (int i = 0; i < f.arity(); ++i) {
        Configuration w = flip(omega, i);
        if (f(w) != fv) out.push_back(i);
    }
    return out;
}

double influence_exact(const BitFunction& f, int i, double p) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    if (i < 0 || i >= n) throw std::out_of_range("influence_exact: bit index");
    const std::uint32_t ibit = 1u << i;
    const std::size_t size = g.table_size();
    if (p == 0.5) {
        std::uint64_t count = 0;
        for (std::uint32_t m = 0; m < size; ++m) {
            if (m & ibit) continue;
            if (g.at(m) != g.at(m | ibit)) ++count;
        }
        return static_cast<double>(count) / static_cast<double>(size >> 1);
    }
    // precompute powers
    std::vector<double> pk(n), qk(n);
    pk[0] = qk[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        pk[k] = pk[k - 1] * p;
        qk[k] = qk[k - 1] * (1.0 - p);
    }
    double total = 0.0;
    for (std::uint32_t m = 0; m < size; ++m) {
        if (m & ibit) continue;
        if (g.at(m) != g.at(m | ibit)) {
            int ones = __builtin_popcount(m);  // bit i is clear
            total += pk[ones] * qk[n - 1 - ones];
        }
    }
    return total;
}

InfluenceVector influence_vector_exact(const BitFunction& f, double p) {
    const BitFunction g = f.exact() ? f : f.materialize();
    InfluenceVector out;
    out.p = p;
    out.exact = true;
    out.values.resize(g.arity());
    for (int i = 0; i < g.arity(); ++i) out.values[i] = influence_exact(g, i, p);
    return out;
}

Estimate influence_mc(const BitFunction& f, int i, double p, std::uint64_t trials,
                      std::uint64_t seed) {
    Rng rng(seed);
    ProductMeasure mu(p);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Configuration w = sample_config(f.arity(), mu, rng);
        double fv = f(w);
        w.flip_bit(i);
        if (f(w) != fv) ++hits;
    }
    return binomial_estimate(hits, trials, seed);
}

InfluenceVector influence_vector_mc(const BitFunction& f, double p, std::uint64_t trials,
                                    std::uint64_t seed) {
    InfluenceVector out;
    out.p = p;
    out.exact = false;
    out.values.resize(f.arity());
    out.stderrs.resize(f.arity());
    Rng root(seed);
    for (int i = 0; i < f.arity(); ++i) {
        Rng rng = root.split(i);
        ProductMeasure mu(p);
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Configuration w = sample_config(f.arity(), mu, rng);
            double fv = f(w);
            w.flip_bit(i);
            if (f(w) != fv) ++hits;
        }
        Estimate e = binomial_estimate(hits, trials, seed);
        out.values[i] = e.mean;
        out.stderrs[i] = e.stderr_;
    }
    return out;
}

double set_influence_exact(const BitFunction& f, std::uint32_t s_mask) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    const std::uint32_t sc = full & ~s_mask;
    std::uint64_t nonconst_fibers = 0, fibers = 0;
    std::uint32_t base = 0;
    for (;;) {
        // fiber over assignment `base` of S^c bits
        double first = 0.0;
        bool have = false, varies = false;
        std::uint32_t s = 0;
        for (;;) {
            double v = g.at(base | s);
            if (!have) {
                first = v;
                have = true;
            } else if (v != first) {
                varies = true;
                break;
            }
            if (s == s_mask) break;
            s = (s - s_mask) & s_mask;
        }
        if (varies) ++nonconst_fibers;
        ++fibers;
        if (base == sc) break;
        base = (base - sc) & sc;
    }
    return static_cast<double>(nonconst_fibers) / static_cast<double>(fibers);
}

Estimate set_influence_mc(const BitFunction& f, const std::vector<int>& s_bits, bool monotone,
                          std::uint64_t trials, std::uint64_t seed) {
    const int n = f.arity();
    if (!monotone && s_bits.size() > 20)
        throw std::invalid_argument("set_influence_mc: non-monotone f needs |S| <= 20");
    Rng rng(seed);
    ProductMeasure half(0.5);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Configuration w = sample_config(n, half, rng);
        bool varies = false;
        if (monotone) {
            Configuration lo = w, hi = w;
            for (int b : s_bits) {
                lo.set_plus(b, false);
                hi.set_plus(b, true);
            }
            varies = f(lo) != f(hi);
        } else {
            Configuration v = w;
            double first = 0.0;
            for (std::uint64_t a = 0; a < (std::uint64_t(1) << s_bits.size()); ++a) {
                for (std::size_t k = 0; k < s_bits.size(); ++k)
                    v.set_plus(s_bits[k], (a >> k) & 1);
                double val = f(v);
                if (a == 0)
                    first = val;
                else if (val != first) {
                    varies = true;
                    break;
                }
            }
        }
        if (varies) ++hits;
    }
    return binomial_estimate(hits, trials, seed);
}

double expectation_at_p(const BitFunction& f, double p) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    std::vector<double> pk(n + 1), qk(n + 1);
    pk[0] = qk[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        pk[k] = pk[k - 1] * p;
        qk[k] = qk[k - 1] * (1.0 - p);
    }
    double s = 0.0;
    for (std::uint32_t m = 0; m < g.table_size(); ++m) {
        int ones = __builtin_popcount(m);
        s += g.at(m) * pk[ones] * qk[n - ones];
    }
    return s;
}

bool is_monotone(const BitFunction& f) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    for (std::uint32_t m = 0; m < g.table_size(); ++m)
        for (int i = 0; i < n; ++i) {
            if (m & (1u << i)) continue;
            if (g.at(m) > g.at(m | (1u << i))) return false;
        }
    return true;
}

bool is_monotone_sampled(const BitFunction& f, std::uint64_t samples, std::uint64_t seed) {
    Rng rng(seed);
    ProductMeasure half(0.5);
    const int n = f.arity();
    for (std::uint64_t t = 0; t < samples; ++t) {
        Configuration w = sample_config(n, half, rng);
        int i = static_cast<int>(rng.below(n));
        Configuration lo = w, hi = w;
        lo.set_plus(i, false);
        hi.set_plus(i, true);
        if (f(lo) > f(hi)) return false;
    }
    return true;
}

RussoCheck russo_check(const BitFunction& f, double p, double dp) {
    if (f.range() != Range::ZO)
        throw std::invalid_argument("russo_check: ZO range required");
    if (!is_monotone(f)) throw std::invalid_argument("russo_check: f is not monotone");
    RussoCheck out;
    out.slope = (expectation_at_p(f, p + dp) - expectation_at_p(f, p - dp)) / (2.0 * dp);
    out.total_influence = influence_vector_exact(f, p).total();
    out.gap = std::abs(out.slope - out.total_influence);
    return out;
}

std::uint64_t edge_boundary(const BitFunction& f) {
    if (f.range() != Range::ZO)
        throw std::invalid_argument("edge_boundary: ZO range required");
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    std::uint64_t count = 0;
    for (std::uint32_t m = 0; m < g.table_size(); ++m)
        for (int i = 0; i < n; ++i) {
            if (m & (1u << i)) continue;
            if (g.at(m) != g.at(m | (1u << i))) ++count;
        }
    return count;
}

double variance_exact(const BitFunction& f) {
    const BitFunction g = f.exact() ? f : f.materialize();
    double s = 0.0, s2 = 0.0;
    for (double v : g.table()) {
        s += v;
        s2 += v * v;
    }
    double n = static_cast<double>(g.table_size());
    return s2 / n - (s / n) * (s / n);
}

InequalityDiagnostics inequality_diagnostics(const BitFunction& f) {
    const BitFunction g = f.exact() ? f : f.materialize();
    InequalityDiagnostics d;
    d.variance = variance_exact(g);
    InfluenceVector inf = influence_vector_exact(g, 0.5);
    d.total_influence = inf.total();
    d.max_influence = inf.max();
    d.poincare_holds = d.variance <= d.total_influence + 1e-12;
    d.sqrt_n_applicable = g.range() == Range::PM1 && is_monotone(g);
    if (d.sqrt_n_applicable)
        d.sqrt_n_holds = d.total_influence <= std::sqrt(static_cast<double>(g.arity())) + 1e-12;
    double n = static_cast<double>(g.arity());
    double denom = d.variance * std::log(n) / n;
    d.kkl_ratio = denom > 0 ? d.max_influence / denom : 0.0;
    return d;
}

std::optional<double> ThresholdCurve::window_width() const {
    auto level = [&](double target) -> std::optional<double> {
        for (std::size_t k = 1; k < points.size(); ++k) {
            double a = points[k - 1].value.mean, b = points[k].value.mean;
            if ((a - target) * (b - target) <= 0.0 && a != b) {
                double t = (target - a) / (b - a);
                return points[k - 1].p + t * (points[k].p - points[k - 1].p);
            }
        }
        return std::nullopt;
    };
    auto lo = level(0.1), hi = level(0.9);
    if (!lo || !hi) return std::nullopt;
    return *hi - *lo;
}

ThresholdCurve threshold_curve(const BitFunction& f, const std::vector<double>& p_grid,
                               std::uint64_t trials, std::uint64_t seed) {
    ThresholdCurve curve;
    Rng root(seed);
    for (std::size_t k = 0; k < p_grid.size(); ++k) {
        Rng rng = root.split(k);
        ProductMeasure mu(p_grid[k]);
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Configuration w = sample_config(f.arity(), mu, rng);
            if (f(w) == 1.0) ++hits;
        }
        curve.points.push_back({p_grid[k], binomial_estimate(hits, trials, seed)});
    }
    return curve;
}

}  // namespace noiselab
