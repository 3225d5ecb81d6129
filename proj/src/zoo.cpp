#include "noiselab/zoo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace noiselab::zoo {

namespace {

int sign_of_sum(const Configuration& w) {
    return 2 * w.popcount() > w.arity() ? +1 : -1;
}

struct CliqueIndex {
    int v;
    std::vector<std::pair<int, int>> pairs;  // edge index -> (a,b), a < b
    explicit CliqueIndex(int vertices) : v(vertices) {
        for (int a = 0; a < v; ++a)
            for (int b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
    }
};

// exact k-clique search with candidate pruning; node-capped
bool has_clique(const std::vector<std::uint64_t>& adj, int v, int k) {
    if (k <= 1) return true;
    std::uint64_t cap = 50'000'000;
    std::uint64_t nodes = 0;
    struct Frame {
        std::uint64_t cand;  // vertices adjacent to everything picked so far
        int size;
    };
    std::vector<Frame> stack;
    std::uint64_t all = (v == 64) ? ~0ULL : ((1ULL << v) - 1);
    stack.push_back({all, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (++nodes > cap) throw std::runtime_error("clique: time cap exceeded");
        std::uint64_t cand = f.cand;
        while (cand) {
            int x = __builtin_ctzll(cand);
            cand &= cand - 1;  // only consider extensions with larger vertex ids
            if (f.size + 1 >= k) return true;
            std::uint64_t next = cand & adj[x];
            if (f.size + 1 + __builtin_popcountll(next) >= k)
                stack.push_back({next, f.size + 1});
        }
    }
    return false;
}

}  // namespace

BitFunction dictator(int n) {
    return BitFunction::from_oracle(
        n, Range::PM1, [](const Configuration& w) { return static_cast<double>(w.bit(0)); },
        "DICT_" + std::to_string(n));
}

BitFunction parity(int n) {
    return BitFunction::from_oracle(
        n, Range::PM1,
        [n](const Configuration& w) {
            return ((n - w.popcount()) & 1) ? -1.0 : 1.0;
        },
        "PAR_" + std::to_string(n));
}

BitFunction majority(int n) {
    if (n % 2 == 0) throw std::invalid_argument("majority: n must be odd");
    return BitFunction::from_oracle(
        n, Range::PM1,
        [](const Configuration& w) { return static_cast<double>(sign_of_sum(w)); },
        "MAJ_" + std::to_string(n));
}

BitFunction iter3maj(int depth) {
    if (depth < 1 || depth > 12) throw std::invalid_argument("iter3maj: depth in [1,12]");
    int n = 1;
    for (int i = 0; i < depth; ++i) n *= 3;
    return BitFunction::from_oracle(
        n, Range::PM1,
        [n](const Configuration& w) {
            std::vector<int> cur(n);
            for (int i = 0; i < n; ++i) cur[i] = w.bit(i);
            while (cur.size() > 1) {
                std::vector<int> next(cur.size() / 3);
                for (std::size_t i = 0; i < next.size(); ++i) {
                    int s = cur[3 * i] + cur[3 * i + 1] + cur[3 * i + 2];
                    next[i] = s > 0 ? 1 : -1;
                }
                cur.swap(next);
            }
            return static_cast<double>(cur[0]);
        },
        "ITER3MAJ_" + std::to_string(depth));
}

TribesLayout tribes_layout(int n) {
    if (n < 2) throw std::invalid_argument("tribes: n >= 2");
    double raw = std::log2(static_cast<double>(n)) - std::log2(std::log2(static_cast<double>(n)));
    TribesLayout lay;
    lay.n = n;
    lay.block_len = std::max(1, static_cast<int>(std::floor(raw)));
    lay.blocks = n / lay.block_len;
    lay.debris = n - lay.blocks * lay.block_len;
    return lay;
}

BitFunction tribes(int n) {
    TribesLayout lay = tribes_layout(n);
    return BitFunction::from_oracle(
        n, Range::ZO,
        [lay](const Configuration& w) {
            for (int b = 0; b < lay.blocks; ++b) {
                bool all = true;
                for (int i = 0; i < lay.block_len; ++i)
                    if (!w.is_plus(b * lay.block_len + i)) {
                        all = false;
                        break;
                    }
                if (all) return 1.0;
            }
            return 0.0;
        },
        "TRIBES_" + std::to_string(n));
}

BitFunction clique(int vertices, int k) {
    if (vertices < 2 || vertices > 64) throw std::invalid_argument("clique: vertices in [2,64]");
    if (k < 1 || k > vertices) throw std::invalid_argument("clique: k in [1,vertices]");
    CliqueIndex idx(vertices);
    int r = static_cast<int>(idx.pairs.size());
    return BitFunction::from_oracle(
        r, Range::ZO,
        [idx, vertices, k](const Configuration& w) {
            std::vector<std::uint64_t> adj(vertices, 0);
            for (std::size_t e = 0; e < idx.pairs.size(); ++e) {
                if (w.is_plus(static_cast<int>(e))) {
                    auto [a, b] = idx.pairs[e];
                    adj[a] |= 1ULL << b;
                    adj[b] |= 1ULL << a;
                }
            }
            return has_clique(adj, vertices, k) ? 1.0 : 0.0;
        },
        "CLIQ_" + std::to_string(vertices) + "_" + std::to_string(k));
}

BitFunction random_function(int n, std::uint64_t seed) {
    if (n > kMaxExactArity) throw std::invalid_argument("random_function: n <= 24");
    Rng rng(seed);
    std::vector<double> t(std::size_t(1) << n);
    for (double& v : t) v = rng.next_sign();
    return BitFunction::from_table(n, Range::PM1, std::move(t), "RAND_" + std::to_string(n));
}

BitFunction make(const ZooSpec& spec) {
    switch (spec.kind) {
        case Kind::DICT: return dictator(spec.n);
        case Kind::PAR: return parity(spec.n);
        case Kind::MAJ: return majority(spec.n);
        case Kind::ITER3MAJ: return iter3maj(spec.depth);
        case Kind::TRIBES: return tribes(spec.n);
        case Kind::CLIQUE: return clique(spec.vertices, spec.clique_size);
        case Kind::RANDOM: return random_function(spec.n, spec.seed);
    }
    throw std::logic_error("make: unknown kind");
}

double tribes_mean_zo(int n) {
    TribesLayout lay = tribes_layout(n);
    double a = std::ldexp(1.0, -lay.block_len);
    return 1.0 - std::pow(1.0 - a, lay.blocks);
}

std::vector<double> tribes_influences_zo(int n) {
    TribesLayout lay = tribes_layout(n);
    double a = std::ldexp(1.0, -lay.block_len);
    double inf = std::ldexp(1.0, -(lay.block_len - 1)) * std::pow(1.0 - a, lay.blocks - 1);
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < lay.blocks * lay.block_len; ++i) out[i] = inf;
    return out;
}

std::vector<double> tribes_energy_spectrum_zo(int n) {
    TribesLayout lay = tribes_layout(n);
    const int B = lay.block_len, nb = lay.blocks;
    double a = std::ldexp(1.0, -B);
    // per nonempty block: sum over nonempty subsets of size j: C(B,j) z^j
    std::vector<double> pnz(B + 1, 0.0);
    {
        double c = 1.0;
        for (int j = 1; j <= B; ++j) {
            c = c * (B - j + 1) / j;
            pnz[j] = c;
        }
    }
    std::vector<double> energy(n + 1, 0.0);
    double mean = tribes_mean_zo(n);
    energy[0] = mean * mean;
    // Q_t = P(z)^t, accumulate level sums with weight C(nb,t) (1-a)^{2(nb-t)} a^{2t}
    std::vector<double> qt(1, 1.0);  // t = 0 polynomial
    double logb = 0.0;               // log C(nb, t)
    for (int t = 1; t <= nb; ++t) {
        // qt *= pnz, truncated at degree n
        std::vector<double> next(std::min<std::size_t>(qt.size() + B, std::size_t(n) + 1), 0.0);
        for (std::size_t i = 0; i < qt.size(); ++i) {
            if (qt[i] == 0.0) continue;
            for (int j = 1; j <= B; ++j) {
                if (i + j >= next.size()) break;
                next[i + j] += qt[i] * pnz[j];
            }
        }
        qt.swap(next);
        logb += std::log(static_cast<double>(nb - t + 1) / t);
        double w = std::exp(logb + 2.0 * (nb - t) * std::log1p(-a) + 2.0 * t * std::log(a));
        for (std::size_t m = 1; m < qt.size(); ++m) energy[m] += w * qt[m];
    }
    return energy;
}

double clique_expected_count_log2(int n_vertices, int k) {
    double lc = std::lgamma(n_vertices + 1.0) - std::lgamma(k + 1.0) -
                std::lgamma(n_vertices - k + 1.0);
    return lc / std::log(2.0) - 0.5 * k * (k - 1.0);
}

int clique_tuning(int n_vertices) {
    if (n_vertices < 3) throw std::invalid_argument("clique_tuning: n >= 3");
    int best = 1;
    for (int k = 1; k <= n_vertices; ++k)
        if (clique_expected_count_log2(n_vertices, k) >= 0.0) best = k;
    return best;
}

double iter3maj_agree_step(double a) {
    // pair law: (+,+) and (-,-) have mass a, mixed pairs 1/2 - a each
    const double pp = a, mm = a, pm = 0.5 - a, mp = 0.5 - a;
    double out = 0.0;
    for (int c0 = 0; c0 < 4; ++c0)
        for (int c1 = 0; c1 < 4; ++c1)
            for (int c2 = 0; c2 < 4; ++c2) {
                int cs[3] = {c0, c1, c2};
                double w = 1.0;
                int sa = 0, sb = 0;
                for (int i = 0; i < 3; ++i) {
                    int xa = (cs[i] & 2) ? 1 : -1;
                    int xb = (cs[i] & 1) ? 1 : -1;
                    sa += xa;
                    sb += xb;
                    double m[4] = {mm, mp, pm, pp};
                    w *= m[cs[i]];
                }
                if (sa > 0 && sb > 0) out += w;
            }
    return out;
}

std::vector<Estimate> iter3maj_recursion_check(int depth, double eps, std::uint64_t trials,
                                               std::uint64_t seed) {
    if (depth > 8) throw std::invalid_argument("iter3maj_recursion_check: depth <= 8");
    std::vector<Estimate> out;
    Rng root(seed);
    ProductMeasure half(0.5);
    for (int k = 0; k <= depth; ++k) {
        Rng rng = root.split(k);
        BitFunction f = k == 0 ? dictator(1) : iter3maj(k);
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Configuration w = sample_config(f.arity(), half, rng);
            Configuration we = apply_noise(w, eps, rng);
            if (f(w) == 1.0 && f(we) == 1.0) ++hits;
        }
        out.push_back(binomial_estimate(hits, trials, seed));
    }
    return out;
}

}  // namespace noiselab::zoo
