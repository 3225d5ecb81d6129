#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "noiselab/fpp.hpp"

using namespace noiselab;
using namespace noiselab::fpp;

namespace {

// brute-force oracle at m = 4: DFS over lifted paths in a wide strip
double circ_brute(const TorusWeights& w) {
    const int m = w.m;
    const int maxedges = int(w.b / w.a * m) + 1;
    double best = 1e18;
    // DFS from (0,y0) to (m,y0); coordinates x in [-m, 2m]
    struct Node {
        int x, y;
    };
    std::vector<std::pair<Node, double>> stack;
    for (int y0 = 0; y0 < m; ++y0) {
        std::vector<std::vector<std::uint8_t>> onpath(
            3 * m + 1, std::vector<std::uint8_t>(m, 0));
        // iterative DFS with explicit recursion
        std::function<void(int, int, double, int)> dfs = [&](int x, int y, double cost,
                                                             int edges) {
            if (cost >= best) return;
            if (edges > maxedges) return;
            if (x == m && y == y0) {
                best = std::min(best, cost);
                return;
            }
            auto push = [&](int nx, int ny, double wt) {
                if (nx < -m || nx > 2 * m) return;
                ny = (ny % m + m) % m;
                if (onpath[nx + m][ny]) return;
                onpath[nx + m][ny] = 1;
                dfs(nx, ny, cost + wt, edges + 1);
                onpath[nx + m][ny] = 0;
            };
            int xm = ((x % m) + m) % m;
            push(x + 1, y, w.weight(y * m + xm));
            push(x - 1, y, w.weight(y * m + ((xm - 1 + m) % m)));
            push(x, y + 1, w.weight(m * m + y * m + xm));
            push(x, y - 1, w.weight(m * m + ((y - 1 + m) % m) * m + xm));
        };
        onpath[0 + m][y0] = 1;
        dfs(0, y0, 0.0, 0);
        onpath[0 + m][y0] = 0;
    }
    return best;
}

}  // namespace

TEST_CASE("degenerate weights and parameter validation") {
    CHECK_THROWS(sample_weights(4, 2.0, 2.0, 1));
    CHECK_THROWS(sample_weights(4, 3.0, 2.0, 1));
    CHECK_THROWS(sample_weights(2, 1.0, 2.0, 1));
    // all-light torus: circumference a*m with a straight geodesic
    TorusWeights w = sample_weights(6, 1.0, 2.0, 3);
    std::fill(w.heavy.begin(), w.heavy.end(), 0);
    Circumference c = shortest_circumference(w, 5);
    CHECK(c.value == doctest::Approx(6.0));
    CHECK(c.geodesic.size() == 6);
    CHECK(shortest_circumference_value(w) == doctest::Approx(6.0));
}

TEST_CASE("fair weights: mean (a+b)/2") {
    TorusWeights w = sample_weights(24, 1.0, 2.0, 7);
    double sum = 0;
    for (int e = 0; e < w.n_edges(); ++e) sum += w.weight(e);
    double mean = sum / w.n_edges();
    double sigma = 0.5 / std::sqrt(double(w.n_edges()));
    CHECK(std::abs(mean - 1.5) <= 4 * sigma);
}

TEST_CASE("exact agreement with brute-force cycle enumeration at m = 4") {
    Rng seeds(11);
    for (int t = 0; t < 100; ++t) {
        TorusWeights w = sample_weights(4, 1.0, 2.0, seeds.next_u64());
        double brute = circ_brute(w);
        CHECK(shortest_circumference_value(w) == doctest::Approx(brute));
        Circumference c = shortest_circumference(w, seeds.next_u64());
        CHECK(c.value == doctest::Approx(brute));
    }
}

TEST_CASE("geodesic validity invariants") {
    Rng seeds(13);
    for (int t = 0; t < 40; ++t) {
        int m = 6 + int(seeds.below(8));
        TorusWeights w = sample_weights(m, 1.0, 2.0, seeds.next_u64());
        Circumference c = shortest_circumference(w, seeds.next_u64());
        double sum = 0;
        for (int e : c.geodesic) sum += w.weight(e);
        CHECK(sum == doctest::Approx(c.value));
        CHECK(c.value >= 1.0 * m - 1e-9);
        CHECK(c.value <= 2.0 * m + 1e-9);
        CHECK(int(c.geodesic.size()) <= 2 * m);
        CHECK(int(c.geodesic.size()) >= m);
    }
}

TEST_CASE("value invariant under torus translations") {
    Rng seeds(17);
    TorusWeights w = sample_weights(8, 1.0, 2.0, 99);
    double base = shortest_circumference_value(w);
    for (int t = 0; t < 10; ++t) {
        int dx = int(seeds.below(8)), dy = int(seeds.below(8));
        TorusWeights shifted = w;
        std::fill(shifted.heavy.begin(), shifted.heavy.end(), 0);
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) {
                int src_h = y * 8 + x;
                int dst_h = ((y + dy) % 8) * 8 + (x + dx) % 8;
                if (w.is_heavy(src_h)) shifted.heavy[dst_h >> 6] |= 1ULL << (dst_h & 63);
                int src_v = 64 + y * 8 + x;
                int dst_v = 64 + ((y + dy) % 8) * 8 + (x + dx) % 8;
                if (w.is_heavy(src_v)) shifted.heavy[dst_v >> 6] |= 1ULL << (dst_v & 63);
            }
        CHECK(shortest_circumference_value(shifted) == doctest::Approx(base));
    }
}

TEST_CASE("raising a single edge weight never decreases the circumference") {
    Rng seeds(19);
    for (int t = 0; t < 100; ++t) {
        TorusWeights w = sample_weights(6, 1.0, 2.0, seeds.next_u64());
        double base = shortest_circumference_value(w);
        int e = int(seeds.below(w.n_edges()));
        TorusWeights raised = w;
        raised.heavy[e >> 6] |= 1ULL << (e & 63);
        CHECK(shortest_circumference_value(raised) >= base - 1e-9);
    }
}

TEST_CASE("fluctuation rows: basic sanity and error paths") {
    CHECK_THROWS(fluctuation_row(8, 1.0, 2.0, 1, 1));
    FluctuationRow row = fluctuation_row(16, 1.0, 2.0, 300, 23);
    CHECK(row.variance >= 0.0);
    CHECK(row.mean > 16.0);
    CHECK(row.mean < 32.0);
    CHECK(row.var_stderr > 0.0);
}

TEST_CASE("geodesic stats: uniform rows in the all-light case") {
    const int m = 8;
    // fixed all-light weights; only the tie-break varies
    Rng seeds(29);
    std::vector<double> freq(2 * m * m, 0.0);
    const int trials = 3000;
    for (int t = 0; t < trials; ++t) {
        TorusWeights w = sample_weights(m, 1.0, 2.0, 1);
        std::fill(w.heavy.begin(), w.heavy.end(), 0);
        Circumference c = shortest_circumference(w, seeds.next_u64());
        for (int e : c.geodesic) freq[e] += 1.0;
    }
    for (double& v : freq) v /= trials;
    double sigma = 4 * std::sqrt((1.0 / m) * (1 - 1.0 / m) / trials);
    for (int e = 0; e < m * m; ++e) CHECK(std::abs(freq[e] - 1.0 / m) <= sigma + 1e-12);
    for (int e = m * m; e < 2 * m * m; ++e) CHECK(freq[e] == 0.0);
}

TEST_CASE("geodesic stats: vertical sum bound and symmetry") {
    GeodesicStats st = geodesic_edge_stats(10, 1.0, 2.0, 2000, 31);
    CHECK(st.vertical_freq_sum <= 2.0 * 10 + 4 * 0.5);
    CHECK(st.mean_length <= 2.0 * 10 + 1e-9);
    // vertical edges mutually equal within 4 sigma
    double mean_v = st.vertical_freq_sum / (10 * 10);
    for (int e = 100; e < 200; ++e) {
        double sigma = std::sqrt(std::max(mean_v * (1 - mean_v), 1e-6) / 2000.0);
        CHECK(std::abs(st.edge_freq[e] - mean_v) <= 5 * sigma + 0.01);
    }
}

TEST_CASE("max vertical frequency decays with m") {
    double prev = 1.0;
    for (int m : {8, 16, 32}) {
        GeodesicStats st = geodesic_edge_stats(m, 1.0, 2.0, 400, 50 + m);
        double mx = 0;
        for (int e = m * m; e < 2 * m * m; ++e) mx = std::max(mx, st.edge_freq[e]);
        CHECK(mx < prev + 0.02);
        prev = mx;
    }
}
