#include "noiselab/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noiselab/influence.hpp"
#include "noiselab/zoo.hpp"

namespace noiselab::alg {

namespace {

// is f constant over all completions of the unrevealed bits?
bool determined(const BitFunction& f, std::uint32_t revealed, std::uint32_t values,
                double* out_value) {
    const int n = f.arity();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    const std::uint32_t free_mask = full & ~revealed;
    double first = 0.0;
    bool have = false;
    std::uint32_t sub = 0;
    for (;;) {
        double v = f.at((values & revealed) | sub);
        if (!have) {
            first = v;
            have = true;
        } else if (v != first) {
            return false;
        }
        if (sub == free_mask) break;
        sub = (sub - free_mask) & free_mask;
    }
    if (out_value) *out_value = first;
    return true;
}

}  // namespace

RunRecord run(const QueryAlgorithm& alg, const BitFunction& f, std::uint32_t omega,
              std::uint64_t rand_idx) {
    if (alg.arity() != f.arity()) throw std::invalid_argument("run: arity mismatch");
    const BitFunction g = f.exact() ? f : f.materialize();
    RunRecord rec;
    std::uint32_t revealed = 0, values = 0;
    for (int step = 0; step <= g.arity(); ++step) {
        Action a = alg.next(rand_idx, revealed, values);
        if (a.stop) {
            double v;
            if (!determined(g, revealed, values, &v))
                throw std::runtime_error("algorithm stopped before f was determined");
            rec.value = v;
            rec.queried = revealed;
            return rec;
        }
        if (a.bit < 0 || a.bit >= g.arity() || (revealed >> a.bit & 1))
            throw std::runtime_error("algorithm issued an invalid query");
        revealed |= 1u << a.bit;
        values |= (omega & (1u << a.bit));
    }
    throw std::runtime_error("algorithm failed to stop");
}

RevealmentReport revealment_exact(const QueryAlgorithm& alg, const BitFunction& f) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    const std::uint64_t count = alg.randomness_count();
    const std::uint64_t total = count << n;
    if (total > 300'000'000ULL)
        throw std::invalid_argument("revealment_exact: enumeration too large");
    RevealmentReport rep;
    rep.n = n;
    rep.exact = true;
    rep.trials = total;
    std::vector<std::uint64_t> counts(n, 0);
    std::uint64_t qsum = 0;
    for (std::uint32_t omega = 0; omega < (1u << n); ++omega)
        for (std::uint64_t r = 0; r < count; ++r) {
            RunRecord rec = run(alg, g, omega, r);
            if (rec.value != g.at(omega))
                throw std::runtime_error("algorithm returned a wrong value");
            qsum += __builtin_popcount(rec.queried);
            std::uint32_t q = rec.queried;
            while (q) {
                ++counts[__builtin_ctz(q)];
                q &= q - 1;
            }
        }
    rep.per_bit.resize(n);
    for (int i = 0; i < n; ++i) rep.per_bit[i] = double(counts[i]) / double(total);
    rep.delta = *std::max_element(rep.per_bit.begin(), rep.per_bit.end());
    rep.cost = double(qsum) / double(total);
    return rep;
}

RevealmentReport revealment_mc(const QueryAlgorithm& alg, const BitFunction& f,
                               std::uint64_t trials, std::uint64_t seed) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    Rng rng(seed);
    RevealmentReport rep;
    rep.n = n;
    rep.exact = false;
    rep.trials = trials;
    std::vector<std::uint64_t> counts(n, 0);
    std::uint64_t qsum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint32_t omega = std::uint32_t(rng.next_u64()) & ((n == 32) ? ~0u : ((1u << n) - 1));
        std::uint64_t r = rng.below(alg.randomness_count());
        RunRecord rec = run(alg, g, omega, r);
        qsum += __builtin_popcount(rec.queried);
        std::uint32_t q = rec.queried;
        while (q) {
            ++counts[__builtin_ctz(q)];
            q &= q - 1;
        }
    }
    rep.per_bit.resize(n);
    for (int i = 0; i < n; ++i) rep.per_bit[i] = double(counts[i]) / double(trials);
    rep.delta = *std::max_element(rep.per_bit.begin(), rep.per_bit.end());
    rep.cost = double(qsum) / double(trials);
    return rep;
}

SsBoundReport check_ss_bound(const std::vector<double>& energy, double delta, double ef2) {
    SsBoundReport rep;
    rep.worst_slack = 1e300;
    for (std::size_t k = 1; k < energy.size(); ++k) {
        double slack = delta * double(k) * ef2 - energy[k];
        if (slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_level = int(k);
        }
        if (slack < -1e-12) rep.holds = false;
    }
    return rep;
}

OsOsssReport check_os_osss(const BitFunction& f, double cost, double delta) {
    if (f.range() != Range::PM1)
        throw std::invalid_argument("check_os_osss: PM1 range required");
    const BitFunction g = f.exact() ? f : f.materialize();
    if (!is_monotone(g)) throw std::invalid_argument("check_os_osss: monotone f required");
    OsOsssReport rep;
    rep.cost = cost;
    rep.delta = delta;
    InfluenceVector inf = influence_vector_exact(g, 0.5);
    rep.total_influence = inf.total();
    rep.max_influence = inf.max();
    rep.variance = variance_exact(g);
    rep.os_holds = cost >= rep.total_influence * rep.total_influence - 1e-9;
    rep.osss_holds =
        delta >= rep.variance / (g.arity() * rep.max_influence) - 1e-9;
    return rep;
}

int witness_size_exact(const BitFunction& f, std::uint32_t omega, std::uint64_t step_cap) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    std::uint64_t steps = 0;
    // subsets by increasing cardinality; determination check enumerates the
    // free bits, so the total work is bounded by 3^n
    for (int s = 0; s <= n; ++s) {
        // iterate subsets of size s (Gosper)
        std::uint32_t w = (s == 0) ? 0 : ((1u << s) - 1);
        for (;;) {
            steps += std::uint64_t(1) << (n - s);
            if (steps > step_cap) throw std::runtime_error("witness search: time cap exceeded");
            if (determined(g, w, omega & w, nullptr)) return s;
            if (s == 0) break;
            // next subset of size s
            std::uint32_t c = w & -w, r = w + c;
            w = (((r ^ w) >> 2) / c) | r;
            if (w >= (1u << n)) break;
        }
        if (s == 0 && n > 0) continue;
    }
    return n;
}

int witness_size_greedy(const BitFunction& f, std::uint32_t omega) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    std::uint32_t w = (n == 32) ? ~0u : ((1u << n) - 1);
    for (int i = 0; i < n; ++i) {
        std::uint32_t cand = w & ~(1u << i);
        if (determined(g, cand, omega & cand, nullptr)) w = cand;
    }
    return __builtin_popcount(w);
}

// --- built-in strategies ---------------------------------------------------------

namespace {

class FullScan final : public QueryAlgorithm {
  public:
    explicit FullScan(int n) : n_(n) {}
    int arity() const override { return n_; }
    std::uint64_t randomness_count() const override { return 1; }
    Action next(std::uint64_t, std::uint32_t revealed, std::uint32_t) const override {
        for (int i = 0; i < n_; ++i)
            if (!(revealed >> i & 1)) return Action::query(i);
        return Action::halt();
    }

  private:
    int n_;
};

class FirstBit final : public QueryAlgorithm {
  public:
    explicit FirstBit(int n) : n_(n) {}
    int arity() const override { return n_; }
    std::uint64_t randomness_count() const override { return 1; }
    Action next(std::uint64_t, std::uint32_t revealed, std::uint32_t) const override {
        if (!(revealed & 1)) return Action::query(0);
        return Action::halt();
    }

  private:
    int n_;
};

class Maj3Optimal final : public QueryAlgorithm {
  public:
    int arity() const override { return 3; }
    std::uint64_t randomness_count() const override { return 3; }
    Action next(std::uint64_t r, std::uint32_t revealed, std::uint32_t values) const override {
        int skip = int(r);
        int first = -1, second = -1;
        for (int i = 0; i < 3; ++i)
            if (i != skip) (first < 0 ? first : second) = i;
        if (!(revealed >> first & 1)) return Action::query(first);
        if (!(revealed >> second & 1)) return Action::query(second);
        bool a = values >> first & 1, b = values >> second & 1;
        if (a == b) return Action::halt();
        if (!(revealed >> skip & 1)) return Action::query(skip);
        return Action::halt();
    }
};

class MajorityRandomOrder final : public QueryAlgorithm {
  public:
    explicit MajorityRandomOrder(int n) : n_(n) {
        if (n % 2 == 0 || n > 7) throw std::invalid_argument("majority_random_order: odd n <= 7");
        fact_ = 1;
        for (int i = 2; i <= n; ++i) fact_ *= i;
    }
    int arity() const override { return n_; }
    std::uint64_t randomness_count() const override { return fact_; }
    Action next(std::uint64_t r, std::uint32_t revealed, std::uint32_t values) const override {
        // decode the permutation from the factorial number system
        int perm[8];
        int pool[8];
        for (int i = 0; i < n_; ++i) pool[i] = i;
        std::uint64_t code = r;
        for (int i = 0; i < n_; ++i) {
            int radix = n_ - i;
            int idx = int(code % radix);
            code /= radix;
            perm[i] = pool[idx];
            for (int j = idx; j + 1 < radix; ++j) pool[j] = pool[j + 1];
        }
        int plus = __builtin_popcount(values & revealed);
        int minus = __builtin_popcount(revealed) - plus;
        int remaining = n_ - __builtin_popcount(revealed);
        if (std::abs(plus - minus) > remaining) return Action::halt();
        for (int i = 0; i < n_; ++i)
            if (!(revealed >> perm[i] & 1)) return Action::query(perm[i]);
        return Action::halt();
    }

  private:
    int n_;
    std::uint64_t fact_;
};

class TribesBlockScan final : public QueryAlgorithm {
  public:
    explicit TribesBlockScan(int n) : n_(n), lay_(zoo::tribes_layout(n)) {}
    int arity() const override { return n_; }
    std::uint64_t randomness_count() const override { return 1; }
    Action next(std::uint64_t, std::uint32_t revealed, std::uint32_t values) const override {
        for (int bblock = 0; bblock < lay_.blocks; ++bblock) {
            bool dead = false, complete = true;
            int next_bit = -1;
            for (int i = 0; i < lay_.block_len; ++i) {
                int bit = bblock * lay_.block_len + i;
                if (!(revealed >> bit & 1)) {
                    complete = false;
                    if (next_bit < 0) next_bit = bit;
                } else if (!(values >> bit & 1)) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            if (complete) return Action::halt();  // all-ones block found
            return Action::query(next_bit);
        }
        return Action::halt();  // every block is dead
    }

  private:
    int n_;
    zoo::TribesLayout lay_;
};

class Iter3MajRecursive final : public QueryAlgorithm {
  public:
    explicit Iter3MajRecursive(int depth) : depth_(depth) {
        n_ = 1;
        internal_ = 0;
        for (int i = 0; i < depth; ++i) {
            internal_ += n_;
            n_ *= 3;
        }
        count_ = 1;
        for (int i = 0; i < internal_; ++i) count_ *= 3;
        if (count_ > (1ULL << 40)) throw std::invalid_argument("iter3maj_recursive: depth too big");
    }
    int arity() const override { return n_; }
    std::uint64_t randomness_count() const override { return count_; }
    Action next(std::uint64_t r, std::uint32_t revealed, std::uint32_t values) const override {
        int query = -1;
        eval(0, 0, r, revealed, values, query);
        if (query >= 0) return Action::query(query);
        return Action::halt();
    }

  private:
    int depth_, n_, internal_;
    std::uint64_t count_;

    // evaluate node (level, idx); returns -1/+1 when known, 0 when a query is
    // pending (stored in `query`)
    int eval(int level, int idx, std::uint64_t r, std::uint32_t revealed, std::uint32_t values,
             int& query) const {
        if (level == depth_) {
            if (revealed >> idx & 1) return (values >> idx & 1) ? 1 : -1;
            if (query < 0) query = idx;
            return 0;
        }
        // node id in heap order among internal nodes
        int node_id = 0, width = 1;
        for (int l = 0; l < level; ++l) {
            node_id += width;
            width *= 3;
        }
        node_id += idx;
        std::uint64_t digit = r;
        for (int k = 0; k < node_id; ++k) digit /= 3;
        int skip = int(digit % 3);
        int kids[3] = {3 * idx, 3 * idx + 1, 3 * idx + 2};
        int first = -1, second = -1;
        for (int i = 0; i < 3; ++i)
            if (i != skip) (first < 0 ? first : second) = kids[i];
        int a = eval(level + 1, first, r, revealed, values, query);
        if (a == 0) return 0;
        int b = eval(level + 1, second, r, revealed, values, query);
        if (b == 0) return 0;
        if (a == b) return a;
        int c = eval(level + 1, kids[skip], r, revealed, values, query);
        if (c == 0) return 0;
        return (a + b + c) > 0 ? 1 : -1;
    }
};

}  // namespace

std::unique_ptr<QueryAlgorithm> full_scan(int n) { return std::make_unique<FullScan>(n); }
std::unique_ptr<QueryAlgorithm> first_bit(int n) { return std::make_unique<FirstBit>(n); }
std::unique_ptr<QueryAlgorithm> maj3_optimal() { return std::make_unique<Maj3Optimal>(); }
std::unique_ptr<QueryAlgorithm> majority_random_order(int n) {
    return std::make_unique<MajorityRandomOrder>(n);
}
std::unique_ptr<QueryAlgorithm> tribes_block_scan(int n) {
    return std::make_unique<TribesBlockScan>(n);
}
std::unique_ptr<QueryAlgorithm> iter3maj_recursive(int depth) {
    return std::make_unique<Iter3MajRecursive>(depth);
}

RevealmentReport tribes_block_scan_revealment(int n) {
    zoo::TribesLayout lay = zoo::tribes_layout(n);
    RevealmentReport rep;
    rep.n = n;
    rep.exact = true;
    rep.per_bit.assign(n, 0.0);
    double a = std::ldexp(1.0, -lay.block_len);
    double survive = 1.0;  // P(no all-ones block among the previous ones)
    for (int b = 0; b < lay.blocks; ++b) {
        for (int t = 0; t < lay.block_len; ++t)
            rep.per_bit[b * lay.block_len + t] = survive * std::ldexp(1.0, -t);
        survive *= 1.0 - a;
    }
    rep.delta = *std::max_element(rep.per_bit.begin(), rep.per_bit.end());
    rep.cost = 0.0;
    for (double v : rep.per_bit) rep.cost += v;
    return rep;
}

// --- percolation crossing algorithms ----------------------------------------------

namespace {

std::vector<int> middle_third_rows(const perc::TriWindow& win) {
    int lo = win.H / 3 + 1, hi = (2 * win.H) / 3;
    if (hi < lo) {
        lo = 1;
        hi = win.H - 1;
    }
    std::vector<int> rows;
    for (int r = lo; r <= hi; ++r) rows.push_back(r);
    return rows;
}

}  // namespace

RevealmentReport interface_crossing_revealment_mc(const perc::TriWindow& win,
                                                  std::uint64_t trials, std::uint64_t seed) {
    RevealmentReport rep;
    rep.n = win.size();
    rep.exact = false;
    rep.trials = trials;
    rep.per_bit.assign(win.size(), 0.0);
    std::vector<int> rows = middle_third_rows(win);
    Rng root(seed);
    double qsum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = root.split(t);
        perc::TriConfig cfg = perc::sample_tri(win, 0.5, rng.next_u64());
        int x_row = rows[rng.below(rows.size())];
        perc::InterfaceRun run = perc::interface_crossing_from(cfg, x_row);
        qsum += double(run.queried.size());
        for (int s : run.queried) rep.per_bit[s] += 1.0;
    }
    for (double& v : rep.per_bit) v /= double(trials);
    rep.delta = *std::max_element(rep.per_bit.begin(), rep.per_bit.end());
    rep.cost = qsum / double(trials);
    return rep;
}

RevealmentReport interface_crossing_revealment_exact(const perc::TriWindow& win) {
    if (win.size() > 20)
        throw std::invalid_argument("interface revealment exact: window too large");
    RevealmentReport rep;
    rep.n = win.size();
    rep.exact = true;
    rep.per_bit.assign(win.size(), 0.0);
    std::vector<int> rows = middle_third_rows(win);
    std::uint64_t total = (std::uint64_t(1) << win.size()) * rows.size();
    rep.trials = total;
    double qsum = 0;
    for (std::uint32_t m = 0; m < (1u << win.size()); ++m) {
        perc::TriConfig cfg;
        cfg.win = win;
        cfg.open.assign(1, m);
        for (int x_row : rows) {
            perc::InterfaceRun run = perc::interface_crossing_from(cfg, x_row);
            qsum += double(run.queried.size());
            for (int s : run.queried) rep.per_bit[s] += 1.0;
        }
    }
    for (double& v : rep.per_bit) v /= double(total);
    rep.delta = *std::max_element(rep.per_bit.begin(), rep.per_bit.end());
    rep.cost = qsum / double(total);
    return rep;
}

RevealmentReport radial_revealment_mc(int r_in, int R, std::uint64_t trials,
                                      std::uint64_t seed) {
    RevealmentReport rep;
    rep.n = perc::tri_ball_size(R);
    rep.exact = false;
    rep.trials = trials;
    rep.per_bit.assign(rep.n, 0.0);
    Rng root(seed);
    double qsum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = root.split(t);
        perc::TriAnnulus ball = perc::sample_tri_ball(R, 0.5, rng.next_u64());
        perc::RadialRun run = perc::radial_interface(ball, r_in, rng.next_u64());
        qsum += double(run.queried.size());
        for (auto [q, r] : run.queried) rep.per_bit[perc::tri_ball_index(R, q, r)] += 1.0;
    }
    for (double& v : rep.per_bit) v /= double(trials);
    rep.delta = *std::max_element(rep.per_bit.begin(), rep.per_bit.end());
    rep.cost = qsum / double(trials);
    return rep;
}

}  // namespace noiselab::alg
