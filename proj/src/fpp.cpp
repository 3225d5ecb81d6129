#include "noiselab/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "noiselab/parallel.hpp"

namespace noiselab::fpp {

TorusWeights sample_weights(int m, double a, double b, std::uint64_t seed) {
    if (m < 3) throw std::invalid_argument("sample_weights: m >= 3");
    if (!(a > 0.0 && a < b)) throw std::invalid_argument("sample_weights: need 0 < a < b");
    TorusWeights w;
    w.m = m;
    w.a = a;
    w.b = b;
    Rng rng(seed);
    w.heavy.assign((w.n_edges() + 63) / 64, 0);
    for (int e = 0; e < w.n_edges(); ++e)
        if (rng.next_u64() & 1) w.heavy[e >> 6] |= 1ULL << (e & 63);
    return w;
}

namespace {

// cut-open strip: columns x in [-W, m+W], rows y in Z_m. The margin W bounds
// the horizontal excursion of any minimal winding geodesic (it has at most
// (b/a) m edges).
struct Strip {
    int m, W, cols;
    explicit Strip(const TorusWeights& w)
        : m(w.m), W(static_cast<int>(std::ceil((w.b / w.a - 1.0) * w.m / 2.0)) + 1),
          cols(m + 1 + 2 * W) {}
    int vid(int x, int y) const { return (x + W) * m + y; }
    int nv() const { return cols * m; }
};

inline int mod(int x, int m) { return ((x % m) + m) % m; }

// torus edge ids for the strip edges
inline int torus_h(const TorusWeights& w, int x, int y) { return y * w.m + mod(x, w.m); }
inline int torus_v(const TorusWeights& w, int x, int y) {
    return w.m * w.m + y * w.m + mod(x, w.m);
}

}  // namespace

double shortest_circumference_value(const TorusWeights& w) {
    const double sa = w.a, sb = w.b;
    if (sa != std::floor(sa) || sb != std::floor(sb)) {
        // fall back to the tie-broken double path
        return shortest_circumference(w, 1).value;
    }
    Strip st(w);
    const int ia = static_cast<int>(sa), ib = static_cast<int>(sb);
    const int inf = std::numeric_limits<int>::max() / 2;
    int best = ib * w.m;  // a straight row is always available
    std::vector<int> dist(st.nv());
    std::vector<std::vector<int>> bucket(static_cast<std::size_t>(best) + 1);
    for (int y0 = 0; y0 < w.m; ++y0) {
        std::fill(dist.begin(), dist.end(), inf);
        for (auto& bkt : bucket) bkt.clear();
        const int src = st.vid(0, y0), dst = st.vid(w.m, y0);
        dist[src] = 0;
        bucket[0].push_back(src);
        for (int d = 0; d <= best; ++d) {
            for (std::size_t bi = 0; bi < bucket[d].size(); ++bi) {
                int v = bucket[d][bi];
                if (dist[v] != d) continue;
                if (v == dst) {
                    best = std::min(best, d);
                    break;
                }
                int x = v / w.m - st.W, y = v % w.m;
                auto relax = [&](int nx, int ny, int wt) {
                    if (nx < -st.W || nx > w.m + st.W) return;
                    int u = st.vid(nx, ny);
                    int nd = d + wt;
                    if (nd < dist[u] && nd <= best) {
                        dist[u] = nd;
                        bucket[nd].push_back(u);
                    }
                };
                relax(x + 1, y, w.is_heavy(torus_h(w, x, y)) ? ib : ia);
                relax(x - 1, y, w.is_heavy(torus_h(w, x - 1, y)) ? ib : ia);
                relax(x, mod(y + 1, w.m), w.is_heavy(torus_v(w, x, y)) ? ib : ia);
                relax(x, mod(y - 1, w.m), w.is_heavy(torus_v(w, x, mod(y - 1, w.m))) ? ib : ia);
            }
            if (dist[dst] == d) break;
        }
        if (dist[dst] < best) best = dist[dst];
        if (best == ia * w.m) break;  // cannot improve on an all-light row
    }
    return static_cast<double>(best);
}

Circumference shortest_circumference(const TorusWeights& w, std::uint64_t tiebreak_seed) {
    Strip st(w);
    // invariant uniform tie-break: per torus edge perturbation
    Rng rng(tiebreak_seed);
    std::vector<double> pert(w.n_edges());
    for (double& v : pert) v = rng.next_double() * 1e-9 * w.a;
    auto pw = [&](int torus_edge) { return w.weight(torus_edge) + pert[torus_edge]; };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(st.nv());
    std::vector<int> parent_edge(st.nv());  // torus edge taken into the vertex
    std::vector<int> parent(st.nv());
    double best = inf;
    int best_y = -1;
    std::vector<double> best_dist;
    std::vector<int> best_parent, best_parent_edge;
    using QE = std::pair<double, int>;
    for (int y0 = 0; y0 < w.m; ++y0) {
        std::fill(dist.begin(), dist.end(), inf);
        const int src = st.vid(0, y0), dst = st.vid(w.m, y0);
        dist[src] = 0.0;
        parent[src] = -1;
        parent_edge[src] = -1;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            if (v == dst) break;
            if (d >= best) break;
            int x = v / w.m - st.W, y = v % w.m;
            auto relax = [&](int nx, int ny, int te) {
                if (nx < -st.W || nx > w.m + st.W) return;
                int u = st.vid(nx, ny);
                double nd = d + pw(te);
                if (nd < dist[u]) {
                    dist[u] = nd;
                    parent[u] = v;
                    parent_edge[u] = te;
                    pq.push({nd, u});
                }
            };
            relax(x + 1, y, torus_h(w, x, y));
            relax(x - 1, y, torus_h(w, x - 1, y));
            relax(x, mod(y + 1, w.m), torus_v(w, x, y));
            relax(x, mod(y - 1, w.m), torus_v(w, x, mod(y - 1, w.m)));
        }
        if (dist[st.vid(w.m, y0)] < best) {
            best = dist[st.vid(w.m, y0)];
            best_y = y0;
            best_dist = dist;
            best_parent = parent;
            best_parent_edge = parent_edge;
        }
    }
    Circumference out;
    int v = st.vid(w.m, best_y);
    double value = 0.0;
    while (best_parent[v] != -1) {
        int te = best_parent_edge[v];
        out.geodesic.push_back(te);
        value += w.weight(te);
        v = best_parent[v];
    }
    std::reverse(out.geodesic.begin(), out.geodesic.end());
    out.value = value;
    return out;
}

FluctuationRow fluctuation_row(int m, double a, double b, std::uint64_t trials,
                               std::uint64_t seed, int threads) {
    if (trials < 2) throw std::invalid_argument("fluctuation_row: variance needs >= 2 trials");
    Rng root(seed);
    std::vector<double> vals;
    parallel_fill(trials, threads, vals, [&](std::uint64_t t) {
        TorusWeights w = sample_weights(m, a, b, root.split(t).next_u64());
        return shortest_circumference_value(w);
    });
    FluctuationRow row;
    row.m = m;
    row.trials = trials;
    double n = static_cast<double>(trials);
    double s = 0;
    for (double v : vals) s += v;
    row.mean = s / n;
    double v2 = 0;
    for (double v : vals) v2 += (v - row.mean) * (v - row.mean);
    row.variance = v2 / (n - 1);
    // bootstrap stderr of the variance
    Rng boot(seed ^ 0xf1acULL);
    const int B = 200;
    double bm = 0, bsq = 0;
    for (int k = 0; k < B; ++k) {
        double s1 = 0, s2 = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            double v = vals[boot.below(trials)];
            s1 += v;
            s2 += v * v;
        }
        double mean = s1 / n;
        double var = (s2 - n * mean * mean) / (n - 1);
        bm += var;
        bsq += var * var;
    }
    bm /= B;
    row.var_stderr = std::sqrt(std::max(0.0, bsq / B - bm * bm));
    row.kesten_ratio = row.variance / m;
    row.bks_ratio = row.variance * std::log(static_cast<double>(m)) / m;
    return row;
}

std::vector<FluctuationRow> fluctuation_experiment(const std::vector<int>& m_list, double a,
                                                   double b, std::uint64_t trials,
                                                   std::uint64_t seed, int threads) {
    std::vector<FluctuationRow> out;
    Rng root(seed);
    for (int m : m_list)
        out.push_back(fluctuation_row(m, a, b, trials, root.next_u64(), threads));
    return out;
}

GeodesicStats geodesic_edge_stats(int m, double a, double b, std::uint64_t trials,
                                  std::uint64_t seed) {
    GeodesicStats st;
    st.m = m;
    st.trials = trials;
    st.edge_freq.assign(2 * m * m, 0.0);
    Rng root(seed);
    double total_len = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = root.split(t);
        TorusWeights w = sample_weights(m, a, b, rng.next_u64());
        Circumference c = shortest_circumference(w, rng.next_u64());
        total_len += static_cast<double>(c.geodesic.size());
        for (int e : c.geodesic) st.edge_freq[e] += 1.0;
    }
    for (double& v : st.edge_freq) v /= static_cast<double>(trials);
    for (int e = m * m; e < 2 * m * m; ++e) st.vertical_freq_sum += st.edge_freq[e];
    st.mean_length = total_len / static_cast<double>(trials);
    return st;
}

}  // namespace noiselab::fpp
