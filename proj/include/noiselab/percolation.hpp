#pragma once

// Critical planar percolation: Z^2 bond and triangular-lattice site
// configurations, crossing events with exact duality, torus winding
// circuits, Cardy triangle estimates, multi-arm annulus events with
// exponent fits, quasi-multiplicativity, pivotal statistics and the
// chordal/radial exploration interfaces.
//
// Triangular-lattice conventions: sites are hexagons addressed in axial
// coordinates (q, r) with neighbours (q+-1, r), (q, r+-1), (q+1, r-1),
// (q-1, r+1). Rectangular windows are "brick wall" rectangles: row r holds
// the W cells with column index col = q + floor(r/2) in [0, W). A cell
// belongs to a region iff its center does.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "noiselab/estimate.hpp"
#include "noiselab/rng.hpp"

namespace noiselab::perc {

enum class Lattice { Z2Bond, TriSite };

// --- shared plumbing --------------------------------------------------------

class UnionFind {
  public:
    explicit UnionFind(int n = 0) { reset(n); }
    void reset(int n) {
        p_.assign(n, -1);
    }
    int find(int x) {
        int r = x;
        while (p_[r] >= 0) r = p_[r];
        while (p_[x] >= 0) {
            int nx = p_[x];
            p_[x] = r;
            x = nx;
        }
        return r;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (p_[a] > p_[b]) std::swap(a, b);  // more negative = larger
        p_[a] += p_[b];
        p_[b] = a;
        return true;
    }
    bool same(int a, int b) { return find(a) == find(b); }

  private:
    std::vector<int> p_;
};

// least-squares slope of log(y) against log(x), optionally dropping the
// smallest k x-values (lattice effects); returns (slope, stderr)
std::pair<double, double> fit_loglog_slope(const std::vector<double>& x,
                                           const std::vector<double>& y, int drop_smallest = 0);

// --- Z^2 bond rectangles -----------------------------------------------------

// Rectangle [0,sx] x [0,sy]: (sx+1) x (sy+1) vertices; edge count
// sx*(sy+1) + (sx+1)*sy. The self-dual shape is sx = n+1, sy = n.
struct Z2Rect {
    int sx = 1, sy = 1;
    int cols() const { return sx + 1; }
    int rows() const { return sy + 1; }
    int vertex(int x, int y) const { return y * cols() + x; }
    int n_h_edges() const { return sx * rows(); }
    int n_edges() const { return n_h_edges() + cols() * sy; }
    // h-edge (x,y)-(x+1,y): id = y*sx + x; v-edge (x,y)-(x,y+1): offset + y*cols + x
    int h_edge(int x, int y) const { return y * sx + x; }
    int v_edge(int x, int y) const { return n_h_edges() + y * cols() + x; }
};

struct Z2Config {
    Z2Rect rect;
    std::vector<std::uint64_t> open;  // bit per edge
    bool is_open(int e) const { return open[e >> 6] >> (e & 63) & 1; }
    void set_open(int e, bool v) {
        if (v)
            open[e >> 6] |= 1ULL << (e & 63);
        else
            open[e >> 6] &= ~(1ULL << (e & 63));
    }
};

Z2Config sample_z2(const Z2Rect& rect, double p, std::uint64_t seed);
bool z2_crossing_lr(const Z2Config& cfg);
// dual top-bottom closed crossing; exact complement of the LR crossing
bool z2_dual_crossing_tb(const Z2Config& cfg);

// --- triangular-lattice windows ----------------------------------------------

struct TriWindow {
    int W = 1, H = 1;
    int size() const { return W * H; }
    int id(int col, int row) const { return row * W + col; }
    bool inside(int col, int row) const { return col >= 0 && col < W && row >= 0 && row < H; }
    // up to 6 in-window neighbours of (col,row)
    int neighbors(int col, int row, int out_col[6], int out_row[6]) const;
};

struct TriConfig {
    TriWindow win;
    std::vector<std::uint64_t> open;  // bit per site: 1 = open (white)
    bool is_open(int s) const { return open[s >> 6] >> (s & 63) & 1; }
    void set_open(int s, bool v) {
        if (v)
            open[s >> 6] |= 1ULL << (s & 63);
        else
            open[s >> 6] &= ~(1ULL << (s & 63));
    }
};

TriConfig sample_tri(const TriWindow& win, double p, std::uint64_t seed);
bool tri_crossing_lr_open(const TriConfig& cfg);
bool tri_crossing_tb_closed(const TriConfig& cfg);

// --- torus winding circuits ---------------------------------------------------

// Open circuit with nonzero winding along the first coordinate, detected by
// displacement-tracking union-find. Z2 bond: edges on (Z/nZ)^2. TriSite:
// sites on the axial torus.
bool z2_torus_winding(int n, const std::vector<std::uint64_t>& open_edges);
std::vector<std::uint64_t> sample_z2_torus(int n, double p, std::uint64_t seed);
int z2_torus_edge_count(int n);

// --- crossing probability estimates -------------------------------------------

Estimate crossing_probability_z2(const Z2Rect& rect, double p, std::uint64_t trials,
                                 std::uint64_t seed, int threads = 1);
Estimate crossing_probability_tri(const TriWindow& win, double p, std::uint64_t trials,
                                  std::uint64_t seed, int threads = 1);

// Cardy: equilateral triangle of hexagons, side `mesh`; crossing from the
// hypotenuse arc to the bottom arc [C, D] where D sits at fraction x of the
// side from corner C. The limit probability is x.
Estimate cardy_estimate(double x, int mesh, std::uint64_t trials, std::uint64_t seed,
                        int threads = 1);

// --- arm events ----------------------------------------------------------------

enum class ArmColor : std::uint8_t { Open, Closed };
enum class Sector { Full, Half, Quarter };

struct ArmSpec {
    int r = 1;                    // inner radius
    int R = 8;                    // outer radius
    std::vector<ArmColor> pattern;  // cyclic colors (Full) or linear (Half/Quarter)
    Sector sector = Sector::Full;
};

ArmSpec arm_spec_alternating(int k, int r, int R, Sector sector = Sector::Full);

// One sampled annulus + verdict. Lattice-generic entry point.
bool arm_event_tri(const ArmSpec& spec, Rng& rng);
bool arm_event_z2(const ArmSpec& spec, Rng& rng);

// Stateless-bit evaluators: each site/edge state is a hash of (seed, id), so
// the configuration can be examined lazily. Large annuli are rejected early
// through a nested-radius chain (the arm event restricted to a smaller
// annulus is implied by the full event).
bool arm_event_tri_lazy(const ArmSpec& spec, std::uint64_t bit_seed);
bool arm_event_z2_lazy(const ArmSpec& spec, std::uint64_t bit_seed);
// open path from an open origin to ring R, grown lazily
bool one_arm_tri_lazy(int R, std::uint64_t bit_seed);

Estimate estimate_arm(Lattice lat, const ArmSpec& spec, std::uint64_t trials,
                      std::uint64_t seed, int threads = 1);

struct ArmExponentFit {
    std::vector<int> radii;
    std::vector<Estimate> probs;
    double slope = 0.0;   // fitted exponent (positive): alpha ~ R^-slope
    double stderr_ = 0.0;
};

// Fit of -log alpha_k(r0, R) against log R over a radius grid.
ArmExponentFit arm_exponent_fit(Lattice lat, int k_arms, const std::vector<int>& radii,
                                std::uint64_t trials, std::uint64_t seed, int threads = 1);

// alpha4(r1,r3) / (alpha4(r1,r2) alpha4(r2,r3)) with propagated stderr.
struct QuasiMultReport {
    Estimate a13, a12, a23;
    double ratio = 0.0;
    double ratio_stderr = 0.0;
    bool submultiplicative_within_3sigma = true;
};
QuasiMultReport quasi_mult_check(Lattice lat, int r1, int r2, int r3, std::uint64_t trials,
                                 std::uint64_t seed, int threads = 1);

// --- pivotal statistics ---------------------------------------------------------

struct PivotalStats {
    std::uint64_t trials = 0;
    double mean_pivotal = 0.0;        // E|P|
    double mean_pivotal_sq = 0.0;     // E|P|^2
    double center_mean = 0.0;         // E|P cap center box|
    double center_second_ratio = 0.0;  // E[X^2] / E[X]^2 on the concentric half box
    std::vector<double> site_map;     // per-element pivotal frequency
};

PivotalStats pivotal_stats_tri(const TriWindow& win, std::uint64_t trials, std::uint64_t seed,
                               int threads = 1);
PivotalStats pivotal_stats_z2(const Z2Rect& rect, std::uint64_t trials, std::uint64_t seed,
                              int threads = 1);

// pivotal set of a single configuration (two union-find passes, O(1)/site)
std::vector<int> pivotal_sites_tri(const TriConfig& cfg);
std::vector<int> pivotal_edges_z2(const Z2Config& cfg);

// --- exploration interfaces ------------------------------------------------------

struct InterfaceRun {
    bool crossing = false;        // verdict
    std::vector<int> queried;     // site ids examined
    std::vector<std::pair<double, double>> path;  // dual-vertex trace (midpoints)
    int steps = 0;
};

// Chordal interface with the two-arc convention (virtual open cells beyond
// the left edge, virtual closed cells below the bottom edge); the exit side
// determines the left-right crossing verdict exactly.
InterfaceRun exploration_interface_chordal(const TriConfig& cfg);

// The randomized two-interface crossing algorithm: x uniform in the middle
// third of the right side; runs the above/below interfaces from x.
InterfaceRun interface_crossing_from(const TriConfig& cfg, int x_row);
int interface_middle_third_count(const TriWindow& win);  // number of x choices

// Radial interface on the annulus r..R: walks inward from a random seam on
// the outer ring until a clockwise loop closes around the origin (no open
// crossing) or an open left-side cell reaches radius r (crossing).
struct RadialRun {
    bool one_arm = false;
    std::vector<std::pair<int, int>> queried;  // axial coordinates
    int steps = 0;
};

// tri_annulus holds a configuration on the hex ball of radius R (axial hex
// distance), bit per site, indexed by tri_ball_index.
struct TriAnnulus {
    int R = 4;
    std::vector<std::uint64_t> open;
    bool is_open(int idx) const { return open[idx >> 6] >> (idx & 63) & 1; }
};

int tri_ball_size(int R);
int tri_ball_index(int R, int q, int r);  // -1 if outside
TriAnnulus sample_tri_ball(int R, double p, std::uint64_t seed);

RadialRun radial_interface(const TriAnnulus& ball, int r_in, std::uint64_t seed);
// union-find oracle for the same one-arm event (open crossing of annulus r..R)
bool tri_annulus_one_arm(const TriAnnulus& ball, int r_in);

}  // namespace noiselab::perc
