#include "noiselab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "noiselab/parallel.hpp"

namespace noiselab::perc {

namespace {

inline int floor_div2(int r) { return r >= 0 ? r / 2 : (r - 1) / 2; }

inline void fill_bits(std::vector<std::uint64_t>& words, int nbits, double p, Rng& rng) {
    words.assign((nbits + 63) / 64, 0);
    if (p == 0.5) {
        for (auto& w : words) w = rng.next_u64();
        int tail = nbits & 63;
        if (tail) words.back() &= (1ULL << tail) - 1;
        return;
    }
    for (int i = 0; i < nbits; ++i)
        if (rng.bernoulli(p)) words[i >> 6] |= 1ULL << (i & 63);
}

}  // namespace

std::pair<double, double> fit_loglog_slope(const std::vector<double>& x,
                                           const std::vector<double>& y, int drop_smallest) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[i] > 0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
    std::sort(pts.begin(), pts.end());
    if (drop_smallest > 0 && pts.size() > static_cast<std::size_t>(drop_smallest) + 1)
        pts.erase(pts.begin(), pts.begin() + drop_smallest);
    const int n = static_cast<int>(pts.size());
    if (n < 2) throw std::invalid_argument("fit_loglog_slope: need >= 2 positive points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [a, b] : pts) {
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (auto [a, b] : pts) {
        double resid = b - slope * a - intercept;
        ss += resid * resid;
    }
    double se = n > 2 ? std::sqrt(ss / (n - 2) / (sxx - sx * sx / n)) : 0.0;
    return {slope, se};
}

// --- Z^2 rectangles ----------------------------------------------------------

Z2Config sample_z2(const Z2Rect& rect, double p, std::uint64_t seed) {
    Z2Config cfg;
    cfg.rect = rect;
    Rng rng(seed);
    fill_bits(cfg.open, rect.n_edges(), p, rng);
    return cfg;
}

bool z2_crossing_lr(const Z2Config& cfg) {
    const Z2Rect& r = cfg.rect;
    UnionFind uf(r.cols() * r.rows() + 2);
    const int L = r.cols() * r.rows(), R = L + 1;
    for (int y = 0; y < r.rows(); ++y) {
        uf.unite(L, r.vertex(0, y));
        uf.unite(R, r.vertex(r.sx, y));
    }
    for (int y = 0; y < r.rows(); ++y)
        for (int x = 0; x < r.sx; ++x)
            if (cfg.is_open(r.h_edge(x, y))) uf.unite(r.vertex(x, y), r.vertex(x + 1, y));
    for (int y = 0; y < r.sy; ++y)
        for (int x = 0; x < r.cols(); ++x)
            if (cfg.is_open(r.v_edge(x, y))) uf.unite(r.vertex(x, y), r.vertex(x, y + 1));
    return uf.same(L, R);
}

bool z2_dual_crossing_tb(const Z2Config& cfg) {
    const Z2Rect& r = cfg.rect;
    // dual vertices = faces (i,j), i in [0,sx), j in [0,sy); virtual T, B
    const int faces = r.sx * r.sy;
    UnionFind uf(faces + 2);
    const int T = faces, B = faces + 1;
    auto face = [&](int i, int j) { return j * r.sx + i; };
    for (int i = 0; i < r.sx; ++i) {
        if (!cfg.is_open(r.h_edge(i, r.sy))) uf.unite(T, face(i, r.sy - 1));
        if (!cfg.is_open(r.h_edge(i, 0))) uf.unite(B, face(i, 0));
    }
    for (int j = 0; j + 1 < r.sy; ++j)
        for (int i = 0; i < r.sx; ++i)
            if (!cfg.is_open(r.h_edge(i, j + 1))) uf.unite(face(i, j), face(i, j + 1));
    for (int j = 0; j < r.sy; ++j)
        for (int i = 0; i + 1 < r.sx; ++i)
            if (!cfg.is_open(r.v_edge(i + 1, j))) uf.unite(face(i, j), face(i + 1, j));
    return uf.same(T, B);
}

// --- triangular windows -------------------------------------------------------

int TriWindow::neighbors(int col, int row, int out_col[6], int out_row[6]) const {
    // axial rule translated to (col = q + floor(r/2), row) coordinates
    static const int even_d[6][2] = {{1, 0}, {-1, 0}, {-1, -1}, {0, -1}, {-1, 1}, {0, 1}};
    static const int odd_d[6][2] = {{1, 0}, {-1, 0}, {0, -1}, {1, -1}, {0, 1}, {1, 1}};
    const auto& d = (row & 1) ? odd_d : even_d;
    int k = 0;
    for (int i = 0; i < 6; ++i) {
        int c = col + d[i][0], r = row + d[i][1];
        if (inside(c, r)) {
            out_col[k] = c;
            out_row[k] = r;
            ++k;
        }
    }
    return k;
}

TriConfig sample_tri(const TriWindow& win, double p, std::uint64_t seed) {
    TriConfig cfg;
    cfg.win = win;
    Rng rng(seed);
    fill_bits(cfg.open, win.size(), p, rng);
    return cfg;
}

namespace {

// union-find over tri window sites of one color with two virtual arc nodes
struct TriArcUF {
    UnionFind uf;
    int A = 0, B = 0;  // virtual arcs
    void build(const TriConfig& cfg, bool color_open, bool arcs_lr) {
        const TriWindow& w = cfg.win;
        uf.reset(w.size() + 2);
        A = w.size();
        B = w.size() + 1;
        int nc[6], nr[6];
        for (int row = 0; row < w.H; ++row)
            for (int col = 0; col < w.W; ++col) {
                int s = w.id(col, row);
                if (cfg.is_open(s) != color_open) continue;
                if (arcs_lr) {
                    if (col == 0) uf.unite(A, s);
                    if (col == w.W - 1) uf.unite(B, s);
                } else {
                    if (row == w.H - 1) uf.unite(A, s);
                    if (row == 0) uf.unite(B, s);
                }
                int k = w.neighbors(col, row, nc, nr);
                for (int i = 0; i < k; ++i) {
                    int t = w.id(nc[i], nr[i]);
                    if (t < s && cfg.is_open(t) == color_open) uf.unite(s, t);
                }
            }
    }
};

}  // namespace

bool tri_crossing_lr_open(const TriConfig& cfg) {
    TriArcUF u;
    u.build(cfg, true, true);
    return u.uf.same(u.A, u.B);
}

bool tri_crossing_tb_closed(const TriConfig& cfg) {
    TriArcUF u;
    u.build(cfg, false, false);
    return u.uf.same(u.A, u.B);
}

// --- torus ---------------------------------------------------------------------

namespace {

// union-find tracking horizontal displacement to the parent; reports when a
// union closes a cycle with nonzero net displacement (a winding circuit)
struct WindingUF {
    std::vector<int> parent;
    std::vector<int> rank_;
    std::vector<long long> dx;
    bool wrapped = false;

    void reset(int n) {
        parent.assign(n, -1);
        rank_.assign(n, 0);
        dx.assign(n, 0);
        wrapped = false;
    }
    int find(int x, long long& disp) {
        long long acc = 0;
        int r = x;
        while (parent[r] >= 0) {
            acc += dx[r];
            r = parent[r];
        }
        long long rem = acc;
        while (parent[x] >= 0) {
            int nx = parent[x];
            long long d = dx[x];
            parent[x] = r;
            dx[x] = rem;
            rem -= d;
            x = nx;
        }
        disp = acc;
        return r;
    }
    // pos(v) = pos(u) + d (horizontal lift)
    void unite(int u, int v, int d) {
        long long du, dv;
        int ru = find(u, du), rv = find(v, dv);
        if (ru == rv) {
            if (du + d != dv) wrapped = true;
            return;
        }
        if (rank_[ru] < rank_[rv]) {
            parent[ru] = rv;
            dx[ru] = dv - d - du;
        } else {
            parent[rv] = ru;
            dx[rv] = du + d - dv;
            if (rank_[ru] == rank_[rv]) ++rank_[ru];
        }
    }
};

}  // namespace

int z2_torus_edge_count(int n) { return 2 * n * n; }

std::vector<std::uint64_t> sample_z2_torus(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint64_t> open;
    fill_bits(open, z2_torus_edge_count(n), p, rng);
    return open;
}

bool z2_torus_winding(int n, const std::vector<std::uint64_t>& open_edges) {
    WindingUF uf;
    uf.reset(n * n);
    auto is_open = [&](int e) { return open_edges[e >> 6] >> (e & 63) & 1; };
    auto v = [&](int x, int y) { return y * n + x; };
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            int he = y * n + x;          // (x,y) -> (x+1 mod n, y)
            int ve = n * n + y * n + x;  // (x,y) -> (x, y+1 mod n)
            if (is_open(he)) uf.unite(v(x, y), v((x + 1) % n, y), 1);
            if (is_open(ve)) uf.unite(v(x, y), v(x, (y + 1) % n), 0);
            if (uf.wrapped) return true;
        }
    return uf.wrapped;
}

// --- crossing probabilities ------------------------------------------------------

Estimate crossing_probability_z2(const Z2Rect& rect, double p, std::uint64_t trials,
                                 std::uint64_t seed, int threads) {
    Rng root(seed);
    std::uint64_t hits = parallel_count(trials, threads, [&](std::uint64_t t) -> std::uint64_t {
        thread_local Z2Config cfg;
        cfg.rect = rect;
        Rng rng = root.split(t);
        fill_bits(cfg.open, rect.n_edges(), p, rng);
        return z2_crossing_lr(cfg) ? 1 : 0;
    });
    return binomial_estimate(hits, trials, seed);
}

Estimate crossing_probability_tri(const TriWindow& win, double p, std::uint64_t trials,
                                  std::uint64_t seed, int threads) {
    Rng root(seed);
    std::uint64_t hits = parallel_count(trials, threads, [&](std::uint64_t t) -> std::uint64_t {
        thread_local TriConfig cfg;
        cfg.win = win;
        Rng rng = root.split(t);
        fill_bits(cfg.open, win.size(), p, rng);
        return tri_crossing_lr_open(cfg) ? 1 : 0;
    });
    return binomial_estimate(hits, trials, seed);
}

// --- Cardy ----------------------------------------------------------------------

Estimate cardy_estimate(double x, int mesh, std::uint64_t trials, std::uint64_t seed,
                        int threads) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("cardy_estimate: x in (0,1)");
    const int m = mesh;
    // axial triangle: sites (i,j), i,j >= 0, i+j <= m-1; C = (0,0), A = (m-1,0)
    std::vector<int> id(m * m, -1);
    int count = 0;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i + j <= m - 1; ++i) id[j * m + i] = count++;
    const int cut = static_cast<int>(std::lround(x * m));  // [C,D] = bottom sites i < cut
    Rng root(seed);
    const int HYP = count, CD = count + 1;
    std::uint64_t hits = parallel_count(trials, threads, [&](std::uint64_t t) -> std::uint64_t {
        thread_local std::vector<std::uint64_t> open;
        thread_local UnionFind uf;
        Rng rng = root.split(t);
        fill_bits(open, count, 0.5, rng);
        auto is_open = [&](int s) { return open[s >> 6] >> (s & 63) & 1; };
        uf.reset(count + 2);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i + j <= m - 1; ++i) {
                int s = id[j * m + i];
                if (!is_open(s)) continue;
                if (i + j == m - 1) uf.unite(HYP, s);
                if (j == 0 && i < cut) uf.unite(CD, s);
                // forward neighbours: (i+1,j), (i,j+1), (i+1,j-1)
                if (i + 1 + j <= m - 1) {
                    int u = id[j * m + i + 1];
                    if (is_open(u)) uf.unite(s, u);
                }
                if (i + j + 1 <= m - 1) {
                    int u = id[(j + 1) * m + i];
                    if (is_open(u)) uf.unite(s, u);
                }
                if (j >= 1) {
                    int u = id[(j - 1) * m + i + 1];
                    if (is_open(u)) uf.unite(s, u);
                }
            }
        return uf.same(HYP, CD) ? 1 : 0;
    });
    return binomial_estimate(hits, trials, seed);
}

// --- arm events -------------------------------------------------------------------

ArmSpec arm_spec_alternating(int k, int r, int R, Sector sector) {
    ArmSpec spec;
    spec.r = r;
    spec.R = R;
    spec.sector = sector;
    spec.pattern.resize(k);
    for (int i = 0; i < k; ++i)
        spec.pattern[i] = (i % 2 == 0) ? ArmColor::Open : ArmColor::Closed;
    return spec;
}

namespace {

struct RingEntry {
    double angle;
    int root;
    std::uint8_t color;  // 0 open, 1 closed
};

// search for the color pattern with pairwise-distinct cluster roots; trying a
// handful of distinct candidates per slot is exhaustive for short patterns
bool match_from(const std::vector<RingEntry>& seq, std::size_t pos, std::size_t limit,
                const std::vector<ArmColor>& pat, std::size_t slot, std::vector<int>& used) {
    if (slot == pat.size()) return true;
    int tried = 0;
    std::vector<int> seen;
    for (std::size_t q = pos; q < limit; ++q) {
        const RingEntry& e = seq[q];
        if (e.color != static_cast<std::uint8_t>(pat[slot])) continue;
        bool dup = false;
        for (int u : used)
            if (u == e.root) dup = true;
        for (int s : seen)
            if (s == e.root) dup = true;
        if (dup) continue;
        seen.push_back(e.root);
        used.push_back(e.root);
        if (match_from(seq, q + 1, limit, pat, slot + 1, used)) return true;
        used.pop_back();
        if (++tried >= 6) break;
    }
    return false;
}

bool pattern_present(std::vector<RingEntry> seq, const std::vector<ArmColor>& pat, bool cyclic) {
    if (seq.empty()) return false;
    std::sort(seq.begin(), seq.end(),
              [](const RingEntry& a, const RingEntry& b) { return a.angle < b.angle; });
    std::vector<RingEntry> ded;
    for (const auto& e : seq)
        if (ded.empty() || ded.back().root != e.root) ded.push_back(e);
    if (cyclic && ded.size() > 1 && ded.front().root == ded.back().root) ded.pop_back();
    std::vector<int> used;
    if (!cyclic) return match_from(ded, 0, ded.size(), pat, 0, used);
    std::size_t n = ded.size();
    std::vector<RingEntry> doubled = ded;
    doubled.insert(doubled.end(), ded.begin(), ded.end());
    for (std::size_t s = 0; s < n; ++s) {
        const RingEntry& e = doubled[s];
        if (e.color != static_cast<std::uint8_t>(pat[0])) continue;
        used.assign(1, e.root);
        if (match_from(doubled, s + 1, s + n, pat, 1, used)) return true;
    }
    return false;
}

inline int hexdist(int q, int r) {
    return std::max({std::abs(q), std::abs(r), std::abs(q + r)});
}

inline bool in_sector_tri(Sector sec, int q, int r) {
    if (sec == Sector::Full) return true;
    double xx = q + 0.5 * r;  // euclidean x; y has the sign of r
    if (sec == Sector::Half) return r >= 0;
    return r >= 0 && xx >= -1e-9;
}

const int kAxialDirs[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};

// Indexed hex ball with O(1) coordinate lookup.
struct BallIndex {
    int R;
    std::vector<int> row_off;  // per row r+R
    explicit BallIndex(int R_) : R(R_), row_off(2 * R_ + 2, 0) {
        int off = 0;
        for (int r = -R; r <= R; ++r) {
            row_off[r + R] = off;
            off += 2 * R + 1 - std::abs(r);
        }
        row_off[2 * R + 1] = off;
    }
    int size() const { return row_off[2 * R + 1]; }
    int idx(int q, int r) const {
        if (hexdist(q, r) > R) return -1;
        int qmin = std::max(-R, -r - R);
        return row_off[r + R] + (q - qmin);
    }
};

// one arm-event evaluation on the triangular lattice; IsOpen(index, q, r)
template <class IsOpen>
bool arm_event_tri_src(const ArmSpec& spec, const BallIndex& bi, IsOpen is_open_src,
                       UnionFind ufs[2], std::vector<std::uint8_t>& touch) {
    const int R = spec.R, r_in = spec.r;
    auto is_open = [&](int i) { return is_open_src(i); };
    UnionFind& uf_open = ufs[0];
    UnionFind& uf_closed = ufs[1];
    uf_open.reset(bi.size());
    uf_closed.reset(bi.size());
    for (int r = -R; r <= R; ++r) {
        int qmin = std::max(-R, -r - R), qmax = std::min(R, -r + R);
        for (int q = qmin; q <= qmax; ++q) {
            int d = hexdist(q, r);
            if (d < r_in || !in_sector_tri(spec.sector, q, r)) continue;
            int s = bi.idx(q, r);
            bool sopen = is_open(s);
            UnionFind& uf = sopen ? uf_open : uf_closed;
            for (int k = 0; k < 3; ++k) {  // forward directions suffice
                int nq = q + kAxialDirs[k][0], nr = r + kAxialDirs[k][1];
                int nd = hexdist(nq, nr);
                if (nd < r_in || nd > R || !in_sector_tri(spec.sector, nq, nr)) continue;
                int t = bi.idx(nq, nr);
                if (is_open(t) == sopen) uf.unite(s, t);
            }
        }
    }
    touch.assign(bi.size() * 2, 0);  // [2*root + color]: bit0 inner, bit1 outer
    auto ring_mark = [&](int q, int r, int which) {
        int s = bi.idx(q, r);
        bool sopen = is_open(s);
        UnionFind& uf = sopen ? uf_open : uf_closed;
        touch[2 * uf.find(s) + (sopen ? 0 : 1)] |= which;
    };
    // only ring cells matter for touch flags
    for (int ring = 0; ring < 2; ++ring) {
        int rad = ring == 0 ? r_in : R;
        int which = ring == 0 ? 1 : 2;
        if (rad == 0) {
            if (in_sector_tri(spec.sector, 0, 0)) ring_mark(0, 0, which);
            continue;
        }
        for (int r = -rad; r <= rad; ++r) {
            int qmin = std::max(-rad, -r - rad), qmax = std::min(rad, -r + rad);
            for (int q = qmin; q <= qmax; ++q) {
                if (hexdist(q, r) != rad || !in_sector_tri(spec.sector, q, r)) continue;
                ring_mark(q, r, which);
            }
        }
    }
    if (r_in == 0) {
        if (spec.pattern.size() != 1)
            throw std::invalid_argument("arm event with r = 0 supports single-arm patterns only");
        int s = bi.idx(0, 0);
        bool want_open = spec.pattern[0] == ArmColor::Open;
        if (is_open(s) != want_open) return false;
        UnionFind& uf = want_open ? uf_open : uf_closed;
        return touch[2 * uf.find(s) + (want_open ? 0 : 1)] == 3;
    }
    // sweep the inner ring
    std::vector<RingEntry> seq;
    for (int r = -r_in; r <= r_in; ++r) {
        int qmin = std::max(-r_in, -r - r_in), qmax = std::min(r_in, -r + r_in);
        for (int q = qmin; q <= qmax; ++q) {
            if (hexdist(q, r) != r_in || !in_sector_tri(spec.sector, q, r)) continue;
            int s = bi.idx(q, r);
            bool sopen = is_open(s);
            UnionFind& uf = sopen ? uf_open : uf_closed;
            int root = uf.find(s);
            int color = sopen ? 0 : 1;
            if (touch[2 * root + color] != 3) continue;
            double x = q + 0.5 * r, y = r * 0.8660254037844386;
            seq.push_back({std::atan2(y, x), root * 2 + color, static_cast<std::uint8_t>(color)});
        }
    }
    return pattern_present(std::move(seq), spec.pattern, spec.sector == Sector::Full);
}

}  // namespace

int tri_ball_size(int R) { return 3 * R * R + 3 * R + 1; }

int tri_ball_index(int R, int q, int r) { return BallIndex(R).idx(q, r); }

TriAnnulus sample_tri_ball(int R, double p, std::uint64_t seed) {
    TriAnnulus ball;
    ball.R = R;
    Rng rng(seed);
    fill_bits(ball.open, tri_ball_size(R), p, rng);
    return ball;
}

bool arm_event_tri(const ArmSpec& spec, Rng& rng) {
    BallIndex bi(spec.R);
    std::vector<std::uint64_t> open;
    fill_bits(open, bi.size(), 0.5, rng);
    UnionFind ufs[2];
    std::vector<std::uint8_t> touch;
    return arm_event_tri_src(
        spec, bi, [&](int i) { return bool(open[i >> 6] >> (i & 63) & 1); }, ufs, touch);
}

namespace {

inline bool hash_bit(std::uint64_t seed, std::uint64_t key) {
    return detail::mix64(seed ^ (key * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL)) & 1;
}

inline std::uint64_t tri_key(int q, int r) {
    return (std::uint64_t(std::uint32_t(q + (1 << 16))) << 20) |
           std::uint64_t(std::uint32_t(r + (1 << 16))) << 1;
}

}  // namespace

bool arm_event_tri_lazy(const ArmSpec& spec, std::uint64_t bit_seed) {
    // nested radii: a failure on a sub-annulus implies failure on the full one
    std::vector<int> chain;
    for (int c : {16, 64}) {
        if (c > spec.r && c < spec.R) chain.push_back(c);
    }
    chain.push_back(spec.R);
    UnionFind ufs[2];
    std::vector<std::uint8_t> touch;
    for (int radius : chain) {
        ArmSpec sub = spec;
        sub.R = radius;
        BallIndex bi(radius);
        // index-keyed hashing is not stable across radii; key by coordinates
        struct CoordSrc {
            const BallIndex* bi;
            std::uint64_t seed;
            bool operator()(int idx) const {
                // invert row offsets
                int R = bi->R;
                int lo = 0, hi = 2 * R;
                while (lo < hi) {
                    int mid = (lo + hi + 1) / 2;
                    if (bi->row_off[mid] <= idx)
                        lo = mid;
                    else
                        hi = mid - 1;
                }
                int r = lo - R;
                int qmin = std::max(-R, -r - R);
                int q = qmin + (idx - bi->row_off[lo]);
                return hash_bit(seed, tri_key(q, r));
            }
        };
        CoordSrc src{&bi, bit_seed};
        if (!arm_event_tri_src(sub, bi, src, ufs, touch)) return false;
    }
    return true;
}

bool one_arm_tri_lazy(int R, std::uint64_t bit_seed) {
    auto open_at = [&](int q, int r) { return hash_bit(bit_seed, tri_key(q, r)); };
    if (!open_at(0, 0)) return false;
    // BFS outward; typical clusters are much smaller than the ball
    std::vector<std::pair<int, int>> stack{{0, 0}};
    BallIndex bi(R);
    std::vector<std::uint8_t> vis(bi.size(), 0);
    vis[bi.idx(0, 0)] = 1;
    while (!stack.empty()) {
        auto [q, r] = stack.back();
        stack.pop_back();
        int d = hexdist(q, r);
        if (d == R) return true;
        for (auto& dd : kAxialDirs) {
            int nq = q + dd[0], nr = r + dd[1];
            if (hexdist(nq, nr) > R) continue;
            int idx = bi.idx(nq, nr);
            if (vis[idx]) continue;
            vis[idx] = 1;
            if (open_at(nq, nr)) stack.push_back({nq, nr});
        }
    }
    return false;
}

namespace {

// Z^2: primal vertices and dual faces inside the box |.|_inf <= R
struct Z2Box {
    int R;
    int side;  // vertices per row = 2R+1
    explicit Z2Box(int R_) : R(R_), side(2 * R_ + 1) {}
    int nv() const { return side * side; }
    int vid(int x, int y) const { return (y + R) * side + (x + R); }
    int nf() const { return (side - 1) * (side - 1); }
    int fid(int x, int y) const { return (y + R) * (side - 1) + (x + R); }
    int nhe() const { return (side - 1) * side; }
    int he(int x, int y) const { return (y + R) * (side - 1) + (x + R); }
    int ve(int x, int y) const { return nhe() + (y + R) * side + (x + R); }
    int ne() const { return nhe() + side * (side - 1); }
};

inline bool in_sector_z2(Sector sec, double x, double y) {
    if (sec == Sector::Full) return true;
    if (sec == Sector::Half) return y >= 0;
    return y >= 0 && x >= 0;
}

template <class IsOpen>
bool arm_event_z2_src(const ArmSpec& spec, const Z2Box& box, IsOpen is_open_src,
                      UnionFind ufs[2], std::vector<std::uint8_t>& touch_o,
                      std::vector<std::uint8_t>& touch_c) {
    const int R = spec.R, r_in = std::max(spec.r, 1);
    auto is_open = [&](int e) { return is_open_src(e); };
    UnionFind& ufo = ufs[0];
    UnionFind& ufc = ufs[1];
    ufo.reset(box.nv());
    ufc.reset(box.nf());
    auto vdist = [](int x, int y) { return std::max(std::abs(x), std::abs(y)); };
    auto fdist = [](int x, int y) { return std::max(std::abs(x + 0.5), std::abs(y + 0.5)); };
    auto vin = [&](int x, int y) {
        int d = vdist(x, y);
        return d >= r_in && d <= R && in_sector_z2(spec.sector, x, y);
    };
    auto fin = [&](int x, int y) {
        double d = fdist(x, y);
        return d >= r_in && d <= R && in_sector_z2(spec.sector, x + 0.5, y + 0.5);
    };
    for (int y = -R; y <= R; ++y)
        for (int x = -R; x <= R; ++x) {
            if (!vin(x, y)) continue;
            if (x + 1 <= R && vin(x + 1, y) && is_open(box.he(x, y)))
                ufo.unite(box.vid(x, y), box.vid(x + 1, y));
            if (y + 1 <= R && vin(x, y + 1) && is_open(box.ve(x, y)))
                ufo.unite(box.vid(x, y), box.vid(x, y + 1));
        }
    for (int y = -R; y < R; ++y)
        for (int x = -R; x < R; ++x) {
            if (!fin(x, y)) continue;
            if (x + 1 < R && fin(x + 1, y) && !is_open(box.ve(x + 1, y)))
                ufc.unite(box.fid(x, y), box.fid(x + 1, y));
            if (y + 1 < R && fin(x, y + 1) && !is_open(box.he(x, y + 1)))
                ufc.unite(box.fid(x, y), box.fid(x, y + 1));
        }
    touch_o.assign(box.nv(), 0);
    touch_c.assign(box.nf(), 0);
    for (int y = -R; y <= R; ++y)
        for (int x = -R; x <= R; ++x) {
            if (vin(x, y)) {
                int d = vdist(x, y);
                if (d == r_in) touch_o[ufo.find(box.vid(x, y))] |= 1;
                if (d == R) touch_o[ufo.find(box.vid(x, y))] |= 2;
            }
            if (y < R && x < R && fin(x, y)) {
                double d = fdist(x, y);
                if (d < r_in + 1) touch_c[ufc.find(box.fid(x, y))] |= 1;
                if (d > R - 1) touch_c[ufc.find(box.fid(x, y))] |= 2;
            }
        }
    std::vector<RingEntry> seq;
    for (int y = -r_in - 1; y <= r_in + 1; ++y)
        for (int x = -r_in - 1; x <= r_in + 1; ++x) {
            if (x >= -R && x <= R && y >= -R && y <= R && vin(x, y) && vdist(x, y) == r_in) {
                int root = ufo.find(box.vid(x, y));
                if (touch_o[root] == 3)
                    seq.push_back(
                        {std::atan2(double(y), double(x)), 2 * root, std::uint8_t{0}});
            }
            if (x >= -R && x < R && y >= -R && y < R && fin(x, y) && fdist(x, y) < r_in + 1) {
                int root = ufc.find(box.fid(x, y));
                if (touch_c[root] == 3)
                    seq.push_back({std::atan2(y + 0.5, x + 0.5), 2 * root + 1, std::uint8_t{1}});
            }
        }
    return pattern_present(std::move(seq), spec.pattern, spec.sector == Sector::Full);
}

}  // namespace

bool arm_event_z2(const ArmSpec& spec, Rng& rng) {
    Z2Box box(spec.R);
    std::vector<std::uint64_t> open;
    fill_bits(open, box.ne(), 0.5, rng);
    UnionFind ufs[2];
    std::vector<std::uint8_t> to, tc;
    return arm_event_z2_src(
        spec, box, [&](int e) { return bool(open[e >> 6] >> (e & 63) & 1); }, ufs, to, tc);
}

bool arm_event_z2_lazy(const ArmSpec& spec, std::uint64_t bit_seed) {
    std::vector<int> chain;
    for (int c : {16, 64}) {
        if (c > spec.r && c < spec.R) chain.push_back(c);
    }
    chain.push_back(spec.R);
    UnionFind ufs[2];
    std::vector<std::uint8_t> to, tc;
    for (int radius : chain) {
        ArmSpec sub = spec;
        sub.R = radius;
        Z2Box box(radius);
        // key edges by orientation and absolute coordinates so sub-annuli agree
        struct EdgeSrc {
            const Z2Box* box;
            std::uint64_t seed;
            bool operator()(int e) const {
                int x, y;
                bool horizontal = e < box->nhe();
                if (horizontal) {
                    y = e / (box->side - 1) - box->R;
                    x = e % (box->side - 1) - box->R;
                } else {
                    int k = e - box->nhe();
                    y = k / box->side - box->R;
                    x = k % box->side - box->R;
                }
                std::uint64_t key = (std::uint64_t(horizontal ? 1 : 2) << 42) |
                                    (std::uint64_t(std::uint32_t(x + (1 << 16))) << 21) |
                                    std::uint64_t(std::uint32_t(y + (1 << 16)));
                return hash_bit(seed, key);
            }
        };
        EdgeSrc src{&box, bit_seed};
        if (!arm_event_z2_src(sub, box, src, ufs, to, tc)) return false;
    }
    return true;
}

Estimate estimate_arm(Lattice lat, const ArmSpec& spec, std::uint64_t trials,
                      std::uint64_t seed, int threads) {
    Rng root(seed);
    std::uint64_t hits = 0;
    if (lat == Lattice::TriSite) {
        if (spec.r == 0 && spec.pattern.size() == 1 && spec.pattern[0] == ArmColor::Open &&
            spec.sector == Sector::Full) {
            hits = parallel_count(trials, threads, [&](std::uint64_t t) -> std::uint64_t {
                Rng rng = root.split(t);
                return one_arm_tri_lazy(spec.R, rng.next_u64()) ? 1 : 0;
            });
        } else {
            hits = parallel_count(trials, threads, [&](std::uint64_t t) -> std::uint64_t {
                Rng rng = root.split(t);
                return arm_event_tri_lazy(spec, rng.next_u64()) ? 1 : 0;
            });
        }
    } else {
        hits = parallel_count(trials, threads, [&](std::uint64_t t) -> std::uint64_t {
            Rng rng = root.split(t);
            return arm_event_z2_lazy(spec, rng.next_u64()) ? 1 : 0;
        });
    }
    return binomial_estimate(hits, trials, seed);
}

ArmExponentFit arm_exponent_fit(Lattice lat, int k_arms, const std::vector<int>& radii,
                                std::uint64_t trials, std::uint64_t seed, int threads) {
    ArmExponentFit fit;
    fit.radii = radii;
    Rng root(seed);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        int inner = (k_arms == 1 && lat == Lattice::TriSite) ? 0 : 1;
        ArmSpec spec = arm_spec_alternating(k_arms, inner, radii[i]);
        Estimate e = estimate_arm(lat, spec, trials, root.next_u64(), threads);
        fit.probs.push_back(e);
        xs.push_back(radii[i]);
        ys.push_back(e.mean);
    }
    auto [slope, se] = fit_loglog_slope(xs, ys, 2);
    fit.slope = -slope;
    fit.stderr_ = se;
    return fit;
}

QuasiMultReport quasi_mult_check(Lattice lat, int r1, int r2, int r3, std::uint64_t trials,
                                 std::uint64_t seed, int threads) {
    if (!(r1 <= r2 && r2 <= r3)) throw std::invalid_argument("quasi_mult: need r1 <= r2 <= r3");
    QuasiMultReport rep;
    Rng root(seed);
    auto one = [&](int a, int b) -> Estimate {
        if (a == b) {  // alpha4(r,r) = 1 by convention
            Estimate e;
            e.mean = 1.0;
            e.trials = trials;
            e.seed = seed;
            return e;
        }
        return estimate_arm(lat, arm_spec_alternating(4, a, b), trials, root.next_u64(), threads);
    };
    rep.a13 = one(r1, r3);
    rep.a12 = one(r1, r2);
    rep.a23 = one(r2, r3);
    double prod = rep.a12.mean * rep.a23.mean;
    rep.ratio = prod > 0 ? rep.a13.mean / prod : 0.0;
    auto rel = [](const Estimate& e) { return e.mean > 0 ? e.stderr_ / e.mean : 0.0; };
    rep.ratio_stderr =
        rep.ratio * std::sqrt(rel(rep.a13) * rel(rep.a13) + rel(rep.a12) * rel(rep.a12) +
                              rel(rep.a23) * rel(rep.a23));
    double gap = rep.a13.mean - prod;
    double sig = std::sqrt(rep.a13.stderr_ * rep.a13.stderr_ +
                           prod * prod *
                               (rel(rep.a12) * rel(rep.a12) + rel(rep.a23) * rel(rep.a23)));
    rep.submultiplicative_within_3sigma = gap <= 3 * sig;
    return rep;
}

// --- pivotal statistics ------------------------------------------------------------

std::vector<int> pivotal_sites_tri(const TriConfig& cfg) {
    const TriWindow& w = cfg.win;
    TriArcUF open_lr, closed_tb;
    open_lr.build(cfg, true, true);
    closed_tb.build(cfg, false, false);
    const bool crossing = open_lr.uf.same(open_lr.A, open_lr.B);
    std::vector<int> piv;
    int nc[6], nr[6];
    if (crossing) {
        int rootT = closed_tb.uf.find(closed_tb.A), rootB = closed_tb.uf.find(closed_tb.B);
        for (int row = 0; row < w.H; ++row)
            for (int col = 0; col < w.W; ++col) {
                int s = w.id(col, row);
                if (!cfg.is_open(s)) continue;
                bool hasT = row == w.H - 1, hasB = row == 0;
                int k = w.neighbors(col, row, nc, nr);
                for (int i = 0; i < k && !(hasT && hasB); ++i) {
                    int t = w.id(nc[i], nr[i]);
                    if (cfg.is_open(t)) continue;
                    int rt = closed_tb.uf.find(t);
                    if (rt == rootT) hasT = true;
                    if (rt == rootB) hasB = true;
                }
                if (hasT && hasB) piv.push_back(s);
            }
    } else {
        int rootL = open_lr.uf.find(open_lr.A), rootR = open_lr.uf.find(open_lr.B);
        for (int row = 0; row < w.H; ++row)
            for (int col = 0; col < w.W; ++col) {
                int s = w.id(col, row);
                if (cfg.is_open(s)) continue;
                bool hasL = col == 0, hasR = col == w.W - 1;
                int k = w.neighbors(col, row, nc, nr);
                for (int i = 0; i < k && !(hasL && hasR); ++i) {
                    int t = w.id(nc[i], nr[i]);
                    if (!cfg.is_open(t)) continue;
                    int rt = open_lr.uf.find(t);
                    if (rt == rootL) hasL = true;
                    if (rt == rootR) hasR = true;
                }
                if (hasL && hasR) piv.push_back(s);
            }
    }
    return piv;
}

std::vector<int> pivotal_edges_z2(const Z2Config& cfg) {
    const Z2Rect& r = cfg.rect;
    std::vector<int> piv;
    UnionFind ufo(r.cols() * r.rows() + 2);
    const int L = r.cols() * r.rows(), R = L + 1;
    for (int y = 0; y < r.rows(); ++y) {
        ufo.unite(L, r.vertex(0, y));
        ufo.unite(R, r.vertex(r.sx, y));
    }
    for (int y = 0; y < r.rows(); ++y)
        for (int x = 0; x < r.sx; ++x)
            if (cfg.is_open(r.h_edge(x, y))) ufo.unite(r.vertex(x, y), r.vertex(x + 1, y));
    for (int y = 0; y < r.sy; ++y)
        for (int x = 0; x < r.cols(); ++x)
            if (cfg.is_open(r.v_edge(x, y))) ufo.unite(r.vertex(x, y), r.vertex(x, y + 1));
    const int faces = r.sx * r.sy;
    UnionFind ufc(faces + 2);
    const int T = faces, B = faces + 1;
    auto face = [&](int i, int j) { return j * r.sx + i; };
    for (int i = 0; i < r.sx; ++i) {
        if (!cfg.is_open(r.h_edge(i, r.sy))) ufc.unite(T, face(i, r.sy - 1));
        if (!cfg.is_open(r.h_edge(i, 0))) ufc.unite(B, face(i, 0));
    }
    for (int j = 0; j + 1 < r.sy; ++j)
        for (int i = 0; i < r.sx; ++i)
            if (!cfg.is_open(r.h_edge(i, j + 1))) ufc.unite(face(i, j), face(i, j + 1));
    for (int j = 0; j < r.sy; ++j)
        for (int i = 0; i + 1 < r.sx; ++i)
            if (!cfg.is_open(r.v_edge(i + 1, j))) ufc.unite(face(i, j), face(i + 1, j));

    const bool crossing = ufo.same(L, R);
    if (crossing) {
        int rootT = ufc.find(T), rootB = ufc.find(B);
        auto side = [&](int i, int j, bool& hasT, bool& hasB) {
            if (j < 0) {
                hasB = true;
                return;
            }
            if (j >= r.sy) {
                hasT = true;
                return;
            }
            int rr = ufc.find(face(i, j));
            if (rr == rootT) hasT = true;
            if (rr == rootB) hasB = true;
        };
        for (int y = 0; y < r.rows(); ++y)
            for (int x = 0; x < r.sx; ++x) {
                int e = r.h_edge(x, y);
                if (!cfg.is_open(e)) continue;
                bool hasT = false, hasB = false;
                side(x, y - 1, hasT, hasB);
                side(x, y, hasT, hasB);
                if (hasT && hasB) piv.push_back(e);
            }
        for (int y = 0; y < r.sy; ++y)
            for (int x = 1; x < r.sx; ++x) {  // boundary columns are never pivotal
                int e = r.v_edge(x, y);
                if (!cfg.is_open(e)) continue;
                int ra = ufc.find(face(x - 1, y)), rb = ufc.find(face(x, y));
                bool hasT = ra == rootT || rb == rootT;
                bool hasB = ra == rootB || rb == rootB;
                if (hasT && hasB) piv.push_back(e);
            }
    } else {
        int rootL = ufo.find(L), rootR = ufo.find(R);
        auto check = [&](int e, int va, int vb) {
            if (cfg.is_open(e)) return;
            int ra = ufo.find(va), rb = ufo.find(vb);
            bool hasL = ra == rootL || rb == rootL;
            bool hasR = ra == rootR || rb == rootR;
            if (hasL && hasR) piv.push_back(e);
        };
        for (int y = 0; y < r.rows(); ++y)
            for (int x = 0; x < r.sx; ++x)
                check(r.h_edge(x, y), r.vertex(x, y), r.vertex(x + 1, y));
        for (int y = 0; y < r.sy; ++y)
            for (int x = 0; x < r.cols(); ++x)
                check(r.v_edge(x, y), r.vertex(x, y), r.vertex(x, y + 1));
    }
    return piv;
}

namespace {

template <class Sampler, class PivFn>
PivotalStats pivotal_stats_generic(int n_elements, std::uint64_t trials, std::uint64_t seed,
                                   Sampler sample, PivFn pivotal_of,
                                   const std::vector<std::uint8_t>& in_center, int threads) {
    PivotalStats st;
    st.trials = trials;
    Rng root(seed);
    threads = effective_threads(threads);
    // integer accumulators merge deterministically across workers
    std::vector<std::vector<std::uint64_t>> maps(threads,
                                                 std::vector<std::uint64_t>(n_elements, 0));
    std::vector<std::uint64_t> sums(threads, 0), sumsqs(threads, 0), csums(threads, 0),
        csumsqs(threads, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            std::uint64_t lo = trials * w / threads, hi = trials * (w + 1) / threads;
            for (std::uint64_t t = lo; t < hi; ++t) {
                auto cfg = sample(root.split(t));
                std::vector<int> piv = pivotal_of(cfg);
                std::uint64_t k = piv.size(), c = 0;
                sums[w] += k;
                sumsqs[w] += k * k;
                for (int e : piv) {
                    ++maps[w][e];
                    if (in_center[e]) ++c;
                }
                csums[w] += c;
                csumsqs[w] += c * c;
            }
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t sum = 0, sumsq = 0, csum = 0, csumsq = 0;
    st.site_map.assign(n_elements, 0.0);
    for (int w = 0; w < threads; ++w) {
        sum += sums[w];
        sumsq += sumsqs[w];
        csum += csums[w];
        csumsq += csumsqs[w];
        for (int e = 0; e < n_elements; ++e) st.site_map[e] += double(maps[w][e]);
    }
    double n = static_cast<double>(trials);
    st.mean_pivotal = double(sum) / n;
    st.mean_pivotal_sq = double(sumsq) / n;
    st.center_mean = double(csum) / n;
    double m2 = double(csumsq) / n;
    st.center_second_ratio = st.center_mean > 0 ? m2 / (st.center_mean * st.center_mean) : 0.0;
    for (double& v : st.site_map) v /= n;
    return st;
}

}  // namespace

PivotalStats pivotal_stats_tri(const TriWindow& win, std::uint64_t trials, std::uint64_t seed,
                               int threads) {
    std::vector<std::uint8_t> center(win.size(), 0);
    for (int row = win.H / 4; row < 3 * win.H / 4; ++row)
        for (int col = win.W / 4; col < 3 * win.W / 4; ++col) center[win.id(col, row)] = 1;
    return pivotal_stats_generic(
        win.size(), trials, seed,
        [&](Rng rng) {
            TriConfig cfg;
            cfg.win = win;
            fill_bits(cfg.open, win.size(), 0.5, rng);
            return cfg;
        },
        [](const TriConfig& cfg) { return pivotal_sites_tri(cfg); }, center, threads);
}

PivotalStats pivotal_stats_z2(const Z2Rect& rect, std::uint64_t trials, std::uint64_t seed,
                              int threads) {
    std::vector<std::uint8_t> center(rect.n_edges(), 0);
    auto mark = [&](int e, double x, double y) {
        if (x >= rect.sx / 4.0 && x <= 3.0 * rect.sx / 4.0 && y >= rect.sy / 4.0 &&
            y <= 3.0 * rect.sy / 4.0)
            center[e] = 1;
    };
    for (int y = 0; y < rect.rows(); ++y)
        for (int x = 0; x < rect.sx; ++x) mark(rect.h_edge(x, y), x + 0.5, y);
    for (int y = 0; y < rect.sy; ++y)
        for (int x = 0; x < rect.cols(); ++x) mark(rect.v_edge(x, y), x, y + 0.5);
    return pivotal_stats_generic(
        rect.n_edges(), trials, seed,
        [&](Rng rng) {
            Z2Config cfg;
            cfg.rect = rect;
            fill_bits(cfg.open, rect.n_edges(), 0.5, rng);
            return cfg;
        },
        [](const Z2Config& cfg) { return pivotal_edges_z2(cfg); }, center, threads);
}

// --- exploration interfaces ----------------------------------------------------------

namespace {

struct Axial {
    int q, r;
    bool operator==(const Axial& o) const { return q == o.q && r == o.r; }
};

inline Axial rot_ccw(Axial d) { return {-d.r, d.q + d.r}; }
inline Axial rot_cw(Axial d) { return {d.q + d.r, -d.q}; }

inline void commons(Axial a, Axial d, Axial& c1, Axial& c2) {
    Axial u = rot_ccw(d), v = rot_cw(d);
    c1 = {a.q + u.q, a.r + u.r};
    c2 = {a.q + v.q, a.r + v.r};
}

enum class CellKind { White, Black, ExitA, ExitB, Query };

// generic interface walker; classify() assigns virtual colors and exits,
// query() returns the real color. Returns true iff the exit was ExitA.
template <class Classify, class Query>
bool walk_interface(Axial l, Axial rgt, Axial prev, Classify classify, Query query,
                    std::vector<std::pair<double, double>>* path, int* steps_out, int step_cap) {
    int steps = 0;
    for (;;) {
        if (++steps > step_cap) throw std::runtime_error("interface walk exceeded step cap");
        Axial d{rgt.q - l.q, rgt.r - l.r};
        Axial c1, c2;
        commons(l, d, c1, c2);
        Axial front = (c1 == prev) ? c2 : c1;
        if (path) {
            double mx = 0.5 * ((l.q + rgt.q) + 0.5 * (l.r + rgt.r));
            double my = 0.5 * (l.r + rgt.r) * 0.8660254037844386;
            path->emplace_back(mx, my);
        }
        CellKind kind = classify(front);
        bool white;
        if (kind == CellKind::ExitA) {
            if (steps_out) *steps_out = steps;
            return true;
        }
        if (kind == CellKind::ExitB) {
            if (steps_out) *steps_out = steps;
            return false;
        }
        white = (kind == CellKind::Query) ? query(front) : (kind == CellKind::White);
        if (white) {
            prev = l;
            l = front;
        } else {
            prev = rgt;
            rgt = front;
        }
    }
}

inline int hexd(Axial a) { return std::max({std::abs(a.q), std::abs(a.r), std::abs(a.q + a.r)}); }

}  // namespace

InterfaceRun exploration_interface_chordal(const TriConfig& cfg) {
    const TriWindow& w = cfg.win;
    if (w.W < 2 || w.H < 2)
        throw std::invalid_argument("exploration_interface: window needs >= 2 rows and cols");
    InterfaceRun run;
    std::vector<std::uint8_t> seen(w.size(), 0);
    auto classify = [&](Axial c) {
        int col = c.q + floor_div2(c.r);
        if (c.r < 0) return CellKind::Black;     // bottom arc (and corners)
        if (c.r >= w.H) return CellKind::ExitB;  // exited top: no crossing
        if (col < 0) return CellKind::White;     // left arc
        if (col >= w.W) return CellKind::ExitA;  // exited right: crossing
        return CellKind::Query;
    };
    auto query = [&](Axial c) {
        int s = w.id(c.q + floor_div2(c.r), c.r);
        if (!seen[s]) {
            seen[s] = 1;
            run.queried.push_back(s);
        }
        return cfg.is_open(s);
    };
    run.crossing = walk_interface({-1, 0}, {0, -1}, {-1, -1}, classify, query, &run.path,
                                  &run.steps, 40 * w.size() + 400);
    return run;
}

int interface_middle_third_count(const TriWindow& win) {
    int lo = win.H / 3 + 1, hi = (2 * win.H) / 3;  // seams strictly inside the middle third
    if (hi < lo) {
        lo = 1;
        hi = win.H - 1;
    }
    return hi - lo + 1;
}

InterfaceRun interface_crossing_from(const TriConfig& cfg, int x_row) {
    const TriWindow& w = cfg.win;
    if (w.W < 2 || w.H < 2)
        throw std::invalid_argument("interface_crossing: window needs >= 2 rows and cols");
    if (x_row < 1 || x_row > w.H - 1) throw std::invalid_argument("interface_crossing: seam row");
    InterfaceRun run;
    std::vector<std::uint8_t> seen(w.size(), 0);
    auto query = [&](Axial c) {
        int s = w.id(c.q + floor_div2(c.r), c.r);
        if (!seen[s]) {
            seen[s] = 1;
            run.queried.push_back(s);
        }
        return cfg.is_open(s);
    };
    Axial top_seam{w.W - floor_div2(x_row), x_row};
    Axial bot_seam{w.W - floor_div2(x_row - 1), x_row - 1};
    auto outward_common = [&](Axial a, Axial b) {
        Axial c1, c2;
        commons(a, {b.q - a.q, b.r - a.r}, c1, c2);
        int col1 = c1.q + floor_div2(c1.r), col2 = c2.q + floor_div2(c2.r);
        return col1 >= col2 ? c1 : c2;
    };
    // interface A: white arc = right side at rows >= x_row
    auto classify_a = [&](Axial c) {
        int col = c.q + floor_div2(c.r);
        if (c.r < 0) return CellKind::Black;
        if (c.r >= w.H) return CellKind::ExitB;
        if (col >= w.W) return c.r >= x_row ? CellKind::White : CellKind::Black;
        if (col < 0) return CellKind::ExitA;
        return CellKind::Query;
    };
    bool above = walk_interface(top_seam, bot_seam, outward_common(top_seam, bot_seam),
                                classify_a, query, &run.path, &run.steps, 40 * w.size() + 400);
    if (above) {
        run.crossing = true;
        return run;
    }
    // interface B: white arc = right side at rows < x_row
    auto classify_b = [&](Axial c) {
        int col = c.q + floor_div2(c.r);
        if (c.r >= w.H) return CellKind::Black;
        if (c.r < 0) return CellKind::ExitB;
        if (col >= w.W) return c.r < x_row ? CellKind::White : CellKind::Black;
        if (col < 0) return CellKind::ExitA;
        return CellKind::Query;
    };
    int steps2 = 0;
    bool below = walk_interface(bot_seam, top_seam, outward_common(bot_seam, top_seam),
                                classify_b, query, &run.path, &steps2, 40 * w.size() + 400);
    run.steps += steps2;
    run.crossing = below;
    return run;
}

// --- radial interface -----------------------------------------------------------------

bool tri_annulus_one_arm(const TriAnnulus& ball, int r_in) {
    const int R = ball.R;
    BallIndex bi(R);
    UnionFind uf(bi.size());
    for (int r = -R; r <= R; ++r) {
        int qmin = std::max(-R, -r - R), qmax = std::min(R, -r + R);
        for (int q = qmin; q <= qmax; ++q) {
            int d = hexdist(q, r);
            if (d < r_in) continue;
            int s = bi.idx(q, r);
            if (!ball.is_open(s)) continue;
            for (int k = 0; k < 3; ++k) {
                int nq = q + kAxialDirs[k][0], nr = r + kAxialDirs[k][1];
                int nd = hexdist(nq, nr);
                if (nd < r_in || nd > R) continue;
                int t = bi.idx(nq, nr);
                if (ball.is_open(t)) uf.unite(s, t);
            }
        }
    }
    std::vector<std::uint8_t> touch(bi.size(), 0);
    bool found = false;
    for (int r = -R; r <= R && !found; ++r) {
        int qmin = std::max(-R, -r - R), qmax = std::min(R, -r + R);
        for (int q = qmin; q <= qmax; ++q) {
            int d = hexdist(q, r);
            if (d != r_in && d != R) continue;
            int s = bi.idx(q, r);
            if (!ball.is_open(s)) continue;
            int root = uf.find(s);
            touch[root] |= d == r_in ? 1 : 2;
            if (touch[root] == 3) {
                found = true;
                break;
            }
        }
    }
    return found;
}

RadialRun radial_interface(const TriAnnulus& ball, int r_in, std::uint64_t seed) {
    const int R = ball.R;
    if (R < r_in + 4) throw std::invalid_argument("radial_interface: need R >= r + 4");
    BallIndex bi(R);
    Rng rng(seed);
    RadialRun run;
    std::vector<std::uint8_t> seen(bi.size(), 0);

    auto query = [&](Axial c) {
        int s = bi.idx(c.q, c.r);
        if (!seen[s]) {
            seen[s] = 1;
            run.queried.emplace_back(c.q, c.r);
        }
        return ball.is_open(s);
    };

    // One interface orbit from the directed edge (l0 white, r0 black). The
    // walk's left cells form a connected white chain; a front below or on the
    // inner ring certifies the one-arm event. Otherwise the orbit is a simple
    // closed contour and returns to its start; the winding number around the
    // origin and the lowest real white cell seen are reported.
    struct Orbit {
        bool decided = false;  // one-arm certified
        int winding = 0;
        Axial min_white{0, 0};
        bool has_min_white = false;
    };
    const Axial kSeamNone{1 << 20, 1 << 20};
    auto run_orbit = [&](Axial l0, Axial r0, Axial prev0, Axial seam) {
        Orbit orbit;
        Axial l = l0, rgt = r0, prev = prev0;
        double theta = 0.0, last_ang = 0.0;
        bool have_last = false;
        int min_d = 1 << 20;
        int steps = 0;
        const int cap = 40 * bi.size() + 400;
        for (;;) {
            if (++steps > cap) throw std::runtime_error("radial interface exceeded step cap");
            double mx = 0.5 * ((l.q + rgt.q) + 0.5 * (l.r + rgt.r));
            double my = 0.5 * (l.r + rgt.r) * 0.8660254037844386;
            double ang = std::atan2(my, mx);
            if (have_last) {
                double dtheta = ang - last_ang;
                while (dtheta > M_PI) dtheta -= 2 * M_PI;
                while (dtheta < -M_PI) dtheta += 2 * M_PI;
                theta += dtheta;
            }
            last_ang = ang;
            have_last = true;

            Axial dd{rgt.q - l.q, rgt.r - l.r};
            Axial ca, cb;
            commons(l, dd, ca, cb);
            Axial front = (ca == prev) ? cb : ca;
            int fd = hexd(front);
            bool white;
            if (fd < r_in) {
                orbit.decided = true;  // white chain already sits on the ring
                run.steps += steps;
                return orbit;
            } else if (fd > R) {
                white = front == seam;
            } else {
                white = query(front);
                if (white && fd == r_in) {
                    orbit.decided = true;
                    run.steps += steps;
                    return orbit;
                }
            }
            if (white) {
                prev = l;
                l = front;
                if (hexd(l) <= R && hexd(l) < min_d) {
                    min_d = hexd(l);
                    orbit.min_white = l;
                    orbit.has_min_white = true;
                }
            } else {
                prev = rgt;
                rgt = front;
            }
            if (l == l0 && rgt == r0 && prev == prev0) break;  // orbit closed
        }
        run.steps += steps;
        orbit.winding = static_cast<int>(std::lround(theta / (2 * M_PI)));
        return orbit;
    };

    // Inward probe from a white cell known to be attached to the outer ring.
    // Each obstacle is toured; a wrapping obstacle is a real blocking circuit,
    // a lake is passed underneath (strictly closer to the origin each time).
    auto probe = [&](Axial w) {
        for (int guard = 0; guard <= 4 * R + 8; ++guard) {
            if (hexd(w) <= r_in) {
                run.one_arm = true;
                return true;
            }
            Axial next{0, 0};
            bool found = false;
            for (auto d : kAxialDirs) {
                Axial c{w.q + d[0], w.r + d[1]};
                if (hexd(c) == hexd(w) - 1) {
                    next = c;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("probe: no inward neighbour");
            if (query(next)) {
                w = next;
                continue;
            }
            // obstacle: tour the black component containing `next`
            Axial c1, c2;
            commons(w, {next.q - w.q, next.r - w.r}, c1, c2);
            Orbit orbit = run_orbit(w, next, c1, kSeamNone);
            if (orbit.decided) {
                run.one_arm = true;
                return true;
            }
            if (orbit.winding != 0) {
                run.one_arm = false;  // real black circuit around the origin
                return true;
            }
            if (!orbit.has_min_white) throw std::logic_error("probe: lake tour saw no white");
            w = orbit.min_white;
        }
        throw std::logic_error("probe: no progress");
    };

    // seams around the outer virtual ring, starting at a random position
    std::vector<Axial> outer;
    for (int r = -(R + 1); r <= R + 1; ++r)
        for (int q = -(R + 1); q <= R + 1; ++q)
            if (hexdist(q, r) == R + 1) outer.push_back({q, r});
    const std::size_t start_idx = rng.below(outer.size());
    for (std::size_t k = 0; k < outer.size(); ++k) {
        Axial seam = outer[(start_idx + k) % outer.size()];
        Axial partner{0, 0};
        for (auto d : kAxialDirs) {
            Axial c{seam.q + d[0], seam.r + d[1]};
            if (hexd(c) == R + 1) {
                partner = c;
                break;
            }
        }
        Axial c1, c2;
        commons(seam, {partner.q - seam.q, partner.r - seam.r}, c1, c2);
        Axial prev0 = hexd(c1) > hexd(c2) ? c1 : c2;  // enter inward
        Orbit orbit = run_orbit(seam, partner, prev0, seam);
        if (orbit.decided) {
            run.one_arm = true;
            return run;
        }
        if (orbit.winding != 0 && orbit.has_min_white) {
            // the seam-attached white region wraps the annulus; follow it in
            if (probe(orbit.min_white)) return run;
        }
    }
    run.one_arm = false;  // every outer-attached white region exhausted
    return run;
}

}  // namespace noiselab::perc
