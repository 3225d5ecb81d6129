#include "noiselab/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "noiselab/algorithms.hpp"
#include "noiselab/dynamical.hpp"
#include "noiselab/experiments.hpp"
#include "noiselab/fpp.hpp"
#include "noiselab/fractal.hpp"
#include "noiselab/influence.hpp"
#include "noiselab/parallel.hpp"
#include "noiselab/percolation.hpp"
#include "noiselab/spectral.hpp"
#include "noiselab/zoo.hpp"

namespace noiselab::acceptance {

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "FAILED: " << what << "; ";
        }
    }
    void note(const std::string& s) { detail << s << "; "; }
};

std::vector<BitFunction> zoo_functions(int max_n) {
    std::vector<BitFunction> fs;
    fs.push_back(zoo::dictator(std::min(10, max_n)));
    fs.push_back(zoo::parity(std::min(10, max_n)));
    fs.push_back(zoo::majority(std::min(9, max_n - (1 - max_n % 2))));
    fs.push_back(zoo::iter3maj(2));
    fs.push_back(zoo::tribes(std::min(12, max_n)));
    fs.push_back(zoo::clique(5, 3));
    fs.push_back(zoo::random_function(std::min(10, max_n), 99));
    if (max_n >= 16) {
        fs.push_back(zoo::dictator(16));
        fs.push_back(zoo::parity(16));
        fs.push_back(zoo::majority(15));
        fs.push_back(zoo::tribes(16));
        fs.push_back(zoo::clique(6, 3));
        fs.push_back(zoo::random_function(16, 7));
    }
    return fs;
}

// ---- criterion 1: exact spectral identities --------------------------------

CriterionResult c1() {
    Check ck;
    for (const auto& f : zoo_functions(16)) {
        const BitFunction g = f.exact() ? f : f.materialize();
        SpectrumTable spec = walsh_transform(g);
        double ef2 = 0;
        for (double v : g.table()) ef2 += v * v;
        ef2 /= double(g.table_size());
        ck.require(std::abs(spec.total_mass() - ef2) <= 1e-10,
                   "Parseval on " + g.name());
    }
    SpectrumTable maj3 = walsh_transform(zoo::majority(3));
    for (std::uint32_t s : {1u, 2u, 4u})
        ck.require(std::abs(maj3[s] - 0.5) <= 1e-12, "MAJ3 level-1 coefficient");
    ck.require(std::abs(maj3[7] + 0.5) <= 1e-12, "MAJ3 top coefficient");
    for (const auto& f : zoo_functions(12)) {
        if (f.arity() > 12) continue;
        BitFunction zo = f.range() == Range::ZO ? f.materialize() : f.to_zo().materialize();
        SpectrumTable spec = walsh_transform(zo);
        InfluenceVector inf = influence_vector_exact(zo, 0.5);
        for (int k = 0; k < zo.arity(); ++k) {
            double sum = 0;
            for (std::uint32_t s = 0; s < spec.size(); ++s)
                if (s >> k & 1) sum += spec[s] * spec[s];
            ck.require(std::abs(inf.values[k] - 4 * sum) <= 1e-10,
                       "I_k identity on " + zo.name());
        }
        if (is_monotone(zo))
            for (int k = 0; k < zo.arity(); ++k)
                ck.require(std::abs(inf.values[k] - 2 * spec[1u << k]) <= 1e-10,
                           "monotone I_k identity on " + zo.name());
    }
    return {1, "exact spectral identities", ck.pass, ck.detail.str()};
}

// ---- criterion 2: noise formula ---------------------------------------------

CriterionResult c2() {
    Check ck;
    Rng seeds(220);
    int bad = 0;
    for (int k = 0; k < 50; ++k) {
        BitFunction f = zoo::random_function(10, seeds.next_u64());
        SpectrumTable spec = walsh_transform(f);
        for (double eps : {0.1, 0.5}) {
            Estimate e = correlation_mc(f, eps, 20000, seeds.next_u64());
            if (std::abs(e.mean - correlation_exact(spec, eps)) > 4 * e.stderr_ + 1e-9) ++bad;
        }
    }
    ck.require(bad == 0, std::to_string(bad) + " of 100 random-function checks beyond 4 sigma");
    for (double eps : {0.1, 0.3, 0.5, 0.9}) {
        ck.require(std::abs(correlation_exact(walsh_transform(zoo::dictator(8)), eps) -
                            (1 - eps)) <= 1e-12,
                   "DICT closed form");
        ck.require(std::abs(correlation_exact(walsh_transform(zoo::parity(8)), eps) -
                            std::pow(1 - eps, 8)) <= 1e-12,
                   "PAR closed form");
    }
    return {2, "noise correlation formula", ck.pass, ck.detail.str()};
}

// ---- criterion 3: majority stability limit ----------------------------------

CriterionResult c3() {
    Check ck;
    BitFunction maj = zoo::majority(101);
    Rng seeds(330);
    for (int i = 1; i <= 9; ++i) {
        double eps = i / 10.0;
        Estimate e = stability_gap_mc(maj, eps, 200000, seeds.next_u64());
        double target = std::acos(1 - eps) / M_PI;
        ck.require(std::abs(e.mean - target) <= 0.02,
                   "stability at eps=" + std::to_string(eps) + " off by " +
                       std::to_string(e.mean - target));
    }
    auto energy = energy_spectrum(walsh_transform(zoo::majority(13)));
    ck.require(std::abs(energy[1] - 2.0 / M_PI) <= 0.05, "E_MAJ13(1) vs 2/pi");
    ck.note("E_MAJ13(1)=" + std::to_string(energy[1]));
    return {3, "majority stability limit", ck.pass, ck.detail.str()};
}

// ---- criterion 4: hypercontractivity -----------------------------------------

CriterionResult c4() {
    Check ck;
    Rng rng(440);
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
        int n = 2 + int(rng.below(9));
        std::vector<double> tab(std::size_t(1) << n);
        for (double& v : tab) v = 2.0 * rng.next_double() - 1.0;
        BitFunction f = BitFunction::from_table(n, Range::Real, std::move(tab));
        for (int ri = 1; ri <= 9; ++ri)
            if (!check_hypercontractivity(f, ri / 10.0).holds) ++violations;
    }
    ck.require(violations == 0,
               std::to_string(violations) + " hypercontractivity violations");
    int scalar_bad = 0;
    for (int yi = 0; yi < 1000; ++yi)
        for (int ri = 0; ri < 100; ++ri) {
            double y = -10.0 + 20.0 * yi / 999.0;
            double rho = ri / 99.0;
            if (!check_scalar_bb(y, rho)) ++scalar_bad;
        }
    ck.require(scalar_bad == 0, std::to_string(scalar_bad) + " scalar inequality violations");
    return {4, "hypercontractivity", ck.pass, ck.detail.str()};
}

// ---- criterion 5: Russo ------------------------------------------------------

CriterionResult c5() {
    Check ck;
    for (double p : {0.3, 0.5, 0.7}) {
        RussoCheck m = russo_check(zoo::majority(3).to_zo(), p);
        ck.require(m.gap <= 1e-4, "MAJ3 Russo gap " + std::to_string(m.gap));
        RussoCheck t = russo_check(zoo::tribes(16), p);
        ck.require(t.gap <= 1e-4, "tribes-16 Russo gap " + std::to_string(t.gap));
    }
    return {5, "Margulis-Russo formula", ck.pass, ck.detail.str()};
}

// ---- criterion 6: revealment bounds ------------------------------------------

CriterionResult c6() {
    Check ck;
    using namespace alg;
    BitFunction maj3 = zoo::majority(3).materialize();
    RevealmentReport opt = revealment_exact(*maj3_optimal(), maj3);
    ck.require(std::abs(opt.delta - 5.0 / 6) <= 1e-12, "MAJ3 delta = 5/6");
    ck.require(std::abs(opt.cost - 2.5) <= 1e-12, "MAJ3 cost = 2.5");

    struct PairCase {
        BitFunction f;
        RevealmentReport rep;
        bool monotone_pm1;
        std::string label;
    };
    std::vector<PairCase> pairs;
    pairs.push_back({maj3, opt, true, "maj3/optimal"});
    pairs.push_back({maj3, revealment_exact(*full_scan(3), maj3), true, "maj3/full"});
    {
        BitFunction f = zoo::majority(5).materialize();
        pairs.push_back({f, revealment_exact(*majority_random_order(5), f), true, "maj5/order"});
    }
    {
        BitFunction f = zoo::parity(6).materialize();
        pairs.push_back({f, revealment_exact(*full_scan(6), f), false, "par6/full"});
    }
    {
        BitFunction f = zoo::dictator(5).materialize();
        pairs.push_back({f, revealment_exact(*first_bit(5), f), true, "dict5/firstbit"});
    }
    {
        BitFunction f = zoo::tribes(16).materialize();
        pairs.push_back({f, revealment_exact(*tribes_block_scan(16), f), true, "tribes16/scan"});
    }
    {
        BitFunction f = zoo::iter3maj(2).materialize();
        pairs.push_back({f, revealment_exact(*iter3maj_recursive(2), f), true, "iter3maj/rec"});
    }
    {
        BitFunction f = zoo::clique(4, 3).materialize();
        pairs.push_back({f, revealment_exact(*full_scan(f.arity()), f), true, "clique/full"});
    }
    for (const auto& pc : pairs) {
        auto energy = energy_spectrum(walsh_transform(pc.f));
        double ef2 = 0;
        for (double v : pc.f.table()) ef2 += v * v;
        ef2 /= double(pc.f.table_size());
        ck.require(check_ss_bound(energy, pc.rep.delta, ef2).holds, "SS bound " + pc.label);
        double sum = 0;
        for (double v : pc.rep.per_bit) sum += v;
        ck.require(std::abs(sum - pc.rep.cost) <= 1e-9, "sum rule " + pc.label);
        if (pc.monotone_pm1) {
            BitFunction pm = pc.f.range() == Range::PM1 ? pc.f : pc.f.to_pm1();
            OsOsssReport r = check_os_osss(pm, pc.rep.cost, pc.rep.delta);
            ck.require(r.os_holds, "OS bound " + pc.label);
            ck.require(r.osss_holds, "OSSS bound " + pc.label);
        }
    }
    // tribes at n = 64 through the exact closed forms
    {
        auto energy = zoo::tribes_energy_spectrum_zo(64);
        auto rep = alg::tribes_block_scan_revealment(64);
        ck.require(check_ss_bound(energy, rep.delta, zoo::tribes_mean_zo(64)).holds,
                   "SS bound tribes64 closed form");
    }
    return {6, "revealment and query bounds", ck.pass, ck.detail.str()};
}

// ---- criterion 7: spectral-sample identities ---------------------------------

CriterionResult c7() {
    Check ck;
    for (const auto& f : zoo_functions(12)) {
        if (f.arity() > 12) continue;
        BitFunction pm = f.range() == Range::PM1 ? f.materialize() : f.to_pm1().materialize();
        MarginalReport rep = marginal_checks(pm);
        ck.require(rep.max_abs_diff_1d <= 1e-10, "1-dim marginals on " + pm.name());
        ck.require(rep.max_abs_diff_2d <= 1e-10, "2-dim marginals on " + pm.name());
        // sub-domain law on a random window
        Rng rng(pm.arity() * 7 + 1);
        std::uint32_t full = (1u << pm.arity()) - 1;
        std::uint32_t a_mask = std::uint32_t(rng.below(full)) & full;
        if (__builtin_popcount(a_mask) > 8) a_mask &= 0xF3;
        if (a_mask == 0) a_mask = 1;
        SpectrumTable spec = walsh_transform(pm);
        auto by_restriction = subdomain_marginal_by_restriction(pm, a_mask);
        int na = __builtin_popcount(a_mask);
        double worst = 0;
        for (std::uint32_t packed = 0; packed < (1u << na); ++packed) {
            std::uint32_t s0 = 0;
            int k = 0;
            for (int i = 0; i < pm.arity(); ++i)
                if (a_mask >> i & 1) {
                    if (packed >> k & 1) s0 |= 1u << i;
                    ++k;
                }
            worst = std::max(worst, std::abs(subdomain_marginal_masksum(spec, a_mask, s0) -
                                             by_restriction[packed]));
        }
        ck.require(worst <= 1e-10, "sub-domain law on " + pm.name());
    }
    // W-coupling identity on a 3x3 crossing window and on majority
    {
        perc::TriWindow win{3, 3};
        std::vector<double> tab(512);
        for (std::uint32_t m = 0; m < 512; ++m) {
            perc::TriConfig cfg;
            cfg.win = win;
            cfg.open.assign(1, m);
            tab[m] = perc::tri_crossing_lr_open(cfg) ? 1.0 : -1.0;
        }
        BitFunction crossing = BitFunction::from_table(9, Range::PM1, std::move(tab));
        Rng rng(777);
        for (int t = 0; t < 12; ++t) {
            int x = int(rng.below(9));
            std::uint32_t w = std::uint32_t(rng.below(512)) & ~(1u << x) & 0x1FF;
            auto [lhs, rhs] = one_point_coupling_check(crossing, x, w);
            ck.require(std::abs(lhs - rhs) <= 1e-10, "W-coupling on the crossing window");
        }
        auto [l0, r0] = one_point_coupling_check(zoo::majority(5), 2, 0b11000);
        ck.require(std::abs(l0 - r0) <= 1e-10, "W-coupling on MAJ5");
    }
    return {7, "spectral sample identities", ck.pass, ck.detail.str()};
}

// ---- criterion 8: percolation exactables -------------------------------------

CriterionResult c8(int threads) {
    Check ck;
    for (int n : {10, 50}) {
        Estimate e = perc::crossing_probability_z2(perc::Z2Rect{n + 1, n}, 0.5, 1000000,
                                                   800 + n, threads);
        ck.require(std::abs(e.mean - 0.5) <= 3 * e.stderr_,
                   "self-dual crossing at n=" + std::to_string(n) + ": " +
                       std::to_string(e.mean));
        ck.note("P_lr(" + std::to_string(n + 1) + "x" + std::to_string(n) +
                ")=" + std::to_string(e.mean));
    }
    {
        Rng seeds(808);
        int bad = 0;
        for (int t = 0; t < 100000; ++t) {
            perc::TriConfig cfg = perc::sample_tri(perc::TriWindow{32, 32}, 0.5,
                                                   seeds.next_u64());
            if (perc::tri_crossing_lr_open(cfg) == perc::tri_crossing_tb_closed(cfg)) ++bad;
        }
        ck.require(bad == 0, std::to_string(bad) + " duality violations in 1e5 windows");
    }
    for (double x : {0.3, 0.5, 0.7}) {
        Estimate e = perc::cardy_estimate(x, 100, 200000, std::uint64_t(x * 1000), threads);
        ck.require(std::abs(e.mean - x) <= 0.03,
                   "cardy at x=" + std::to_string(x) + ": " + std::to_string(e.mean));
        ck.note("cardy(" + std::to_string(x) + ")=" + std::to_string(e.mean));
    }
    return {8, "percolation exactables", ck.pass, ck.detail.str()};
}

// ---- criterion 9: arm exponents ------------------------------------------------

CriterionResult c9(int threads) {
    Check ck;
    const std::vector<int> radii{4, 8, 16, 32, 64, 128, 256};
    const std::uint64_t trials = 1000000;
    auto fit1 = perc::arm_exponent_fit(perc::Lattice::TriSite, 1, radii, trials, 901, threads);
    ck.require(std::abs(fit1.slope - 5.0 / 48) <= 0.05,
               "alpha1 slope " + std::to_string(fit1.slope));
    ck.note("alpha1 slope=" + std::to_string(fit1.slope));
    auto fit4 = perc::arm_exponent_fit(perc::Lattice::TriSite, 4, radii, trials, 904, threads);
    ck.require(std::abs(fit4.slope - 1.25) <= 0.2, "alpha4 slope " + std::to_string(fit4.slope));
    ck.note("alpha4 slope=" + std::to_string(fit4.slope));
    auto fit5t = perc::arm_exponent_fit(perc::Lattice::TriSite, 5, radii, trials, 905, threads);
    ck.require(std::abs(fit5t.slope - 2.0) <= 0.2,
               "alpha5 tri slope " + std::to_string(fit5t.slope));
    ck.note("alpha5 tri slope=" + std::to_string(fit5t.slope));
    auto fit5z = perc::arm_exponent_fit(perc::Lattice::Z2Bond, 5, radii, trials, 906, threads);
    ck.require(std::abs(fit5z.slope - 2.0) <= 0.2,
               "alpha5 z2 slope " + std::to_string(fit5z.slope));
    ck.note("alpha5 z2 slope=" + std::to_string(fit5z.slope));
    // quasi-multiplicativity over 20 radius triples
    Rng seeds(909);
    int id = 0;
    for (int r1 : {2, 4, 8}) {
        for (int r2 : {8, 16, 24}) {
            for (int r3 : {32, 48, 64}) {
                if (!(r1 < r2 && r2 < r3)) continue;
                if (++id > 20) break;
                auto rep = perc::quasi_mult_check(perc::Lattice::TriSite, r1, r2, r3, 20000,
                                                  seeds.next_u64(), threads);
                ck.require(rep.ratio >= 0.1 - 3 * rep.ratio_stderr &&
                               rep.ratio <= 10.0 + 3 * rep.ratio_stderr,
                           "quasi-mult ratio " + std::to_string(rep.ratio) + " at (" +
                               std::to_string(r1) + "," + std::to_string(r2) + "," +
                               std::to_string(r3) + ")");
                ck.require(rep.submultiplicative_within_3sigma,
                           "sub-multiplicativity violated at (" + std::to_string(r1) + "," +
                               std::to_string(r2) + "," + std::to_string(r3) + ")");
            }
        }
    }
    return {9, "arm exponents (loose)", ck.pass, ck.detail.str()};
}

// ---- criterion 10: pivotals -----------------------------------------------------

CriterionResult c10(int threads) {
    Check ck;
    std::vector<double> ratios;
    for (int n : {16, 32, 64}) {
        std::uint64_t trials = n == 16 ? 20000 : (n == 32 ? 10000 : 5000);
        perc::PivotalStats st =
            perc::pivotal_stats_tri(perc::TriWindow{n, n}, trials, 1000 + n, threads);
        perc::ArmSpec a4 = perc::arm_spec_alternating(4, 1, n);
        Estimate alpha4 = perc::estimate_arm(perc::Lattice::TriSite, a4, 200000, 1100 + n,
                                             threads);
        double ratio = st.mean_pivotal / (double(n) * n * alpha4.mean);
        ratios.push_back(ratio);
        ck.note("n=" + std::to_string(n) + " E|P|=" + std::to_string(st.mean_pivotal) +
                " ratio=" + std::to_string(ratio) +
                " m2=" + std::to_string(st.center_second_ratio));
        ck.require(st.center_second_ratio <= 20.0,
                   "second-moment ratio " + std::to_string(st.center_second_ratio) + " at n=" +
                       std::to_string(n));
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    ck.require(hi / lo <= 3.0, "pivotal ratio spread " + std::to_string(hi / lo));
    return {10, "pivotal statistics", ck.pass, ck.detail.str()};
}

// ---- criterion 11: dynamical -----------------------------------------------------

CriterionResult c11(int threads) {
    Check ck;
    {
        const int R = 8;
        Estimate ex = dyn::mean_xr(R, 4000, 1111, threads);
        Estimate a1 = dyn::alpha1_origin(R, 100000, 1112);
        double sigma = std::sqrt(ex.stderr_ * ex.stderr_ + a1.stderr_ * a1.stderr_);
        ck.require(std::abs(ex.mean - a1.mean) <= 3 * sigma,
                   "Fubini: E[X]=" + std::to_string(ex.mean) + " vs alpha1=" +
                       std::to_string(a1.mean));
        ck.note("E[X_8]=" + std::to_string(ex.mean) + " alpha1(8)=" + std::to_string(a1.mean));
    }
    {
        perc::TriWindow win{2, 2};
        std::vector<double> table(16);
        for (std::uint32_t m = 0; m < 16; ++m) {
            perc::TriConfig cfg;
            cfg.win = win;
            cfg.open.assign(1, m);
            table[m] = perc::tri_crossing_lr_open(cfg) ? 1.0 : 0.0;
        }
        SpectrumTable spec = walsh_transform(BitFunction::from_table(4, Range::ZO, table));
        std::vector<double> grid{0.1, 0.3, 0.7, 1.2, 2.0};
        auto curve = dyn::time_correlation(win, grid, 60000, 1113);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double expect = correlation_exact(spec, 1.0 - std::exp(-grid[i]));
            ck.require(std::abs(curve[i].value.mean - expect) <=
                           4 * curve[i].value.stderr_ + 1e-12,
                       "dynamical correlation at t=" + std::to_string(grid[i]));
        }
    }
    {
        auto median = [](std::vector<int> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        int prev = -1;
        for (int R : {8, 16, 32, 64}) {
            std::uint64_t trials = R <= 16 ? 600 : (R == 32 ? 300 : 150);
            int med = median(dyn::switch_samples(R, trials, 1200 + R, threads));
            ck.note("median S_" + std::to_string(R) + "=" + std::to_string(med));
            ck.require(med > prev, "median S_R not strictly increasing at R=" +
                                       std::to_string(R));
            prev = med;
        }
    }
    return {11, "dynamical percolation", ck.pass, ck.detail.str()};
}

// ---- criterion 12: fractal --------------------------------------------------------

CriterionResult c12(int threads) {
    Check ck;
    {
        const double p = 0.6;
        fractal::GWParams gw = fractal::gw_params(p);
        auto ps = fractal::single_survivor_sequence(45, p);
        for (int i = 40; i < 45; ++i)
            ck.require(std::abs(ps[i + 1] / ps[i] - gw.mu) <= 1e-6,
                       "ratio convergence at i=" + std::to_string(i));
        // MC single-survivor frequency vs the recursion, i <= 6
        Rng root(1212);
        for (int i = 1; i <= 6; ++i) {
            std::uint64_t trials = i <= 3 ? 200000 : 4000000;
            Rng seed_rng = root.split(i);
            std::uint64_t seed = seed_rng.next_u64();
            Rng trial_root(seed);
            std::uint64_t hits = parallel_count(trials, threads, [&](std::uint64_t t) ->
                                                std::uint64_t {
                return fractal::sample_fractal(i, p, trial_root.split(t).next_u64())
                               .leaf_count() == 1
                           ? 1
                           : 0;
            });
            Estimate e = binomial_estimate(hits, trials, seed);
            ck.require(std::abs(e.mean - fractal::exact_single_survivor(i, p)) <=
                           3 * e.stderr_ + 1e-9,
                       "single-survivor MC at i=" + std::to_string(i));
        }
        // localized probabilities across the full grid m + b <= 12
        Rng seeds(1213);
        for (int m = 1; m <= 12; ++m)
            for (int b = 0; m + b <= 12; ++b) {
                Estimate e = fractal::localized_prob(m, b, p, 20000, seeds.next_u64());
                ck.require(e.mean <= std::pow(gw.mu, m) + 4 * e.stderr_ + 1e-12,
                           "localized bound at m=" + std::to_string(m) + " b=" +
                               std::to_string(b));
            }
    }
    {
        auto fit = fractal::lower_tail_fit(10, 0.35, {4, 8, 16, 32, 64}, 100000, 1214);
        ck.require(std::abs(fit.slope - fit.expected) <= 0.3,
                   "lower-tail slope " + std::to_string(fit.slope) + " vs " +
                       std::to_string(fit.expected));
        ck.note("lower-tail slope=" + std::to_string(fit.slope) +
                " expected=" + std::to_string(fit.expected));
    }
    return {12, "fractal percolation", ck.pass, ck.detail.str()};
}

// ---- criterion 13: FPP --------------------------------------------------------------

CriterionResult c13(int threads) {
    Check ck;
    {
        // the brute-force enumeration lives in the unit tests; here cross-check
        // the two independent solver routes on 100 samples
        Rng seeds(1313);
        for (int t = 0; t < 100; ++t) {
            fpp::TorusWeights w = fpp::sample_weights(4, 1.0, 2.0, seeds.next_u64());
            double fast = fpp::shortest_circumference_value(w);
            fpp::Circumference tie = fpp::shortest_circumference(w, seeds.next_u64());
            ck.require(std::abs(fast - tie.value) <= 1e-9, "solver routes disagree at m=4");
        }
    }
    {
        auto rows = fpp::fluctuation_experiment({16, 32, 64, 128}, 1.0, 2.0, 400, 1314,
                                                threads);
        double lo = 1e300, hi = 0;
        for (const auto& r : rows) {
            lo = std::min(lo, r.bks_ratio);
            hi = std::max(hi, r.bks_ratio);
            ck.note("m=" + std::to_string(r.m) + " var=" + std::to_string(r.variance) +
                    " var*logm/m=" + std::to_string(r.bks_ratio));
        }
        ck.require(hi / lo <= 4.0, "Var log m / m ratio spread " + std::to_string(hi / lo));
        // Kesten direction: Var(128)/Var(32) < 4 (128/32) / (log 128 / log 32)
        double v128 = rows[3].variance, v32 = rows[1].variance;
        ck.require(v128 / v32 < 4.0 * 4.0 / (std::log(128.0) / std::log(32.0)),
                   "variance growth vs Kesten trend");
    }
    {
        fpp::GeodesicStats st = fpp::geodesic_edge_stats(16, 1.0, 2.0, 3000, 1315);
        double bound = 2.0 * 16;
        double sigma = std::sqrt(double(st.mean_length)) / std::sqrt(3000.0) * 4;
        ck.require(st.vertical_freq_sum <= bound + 4 * sigma,
                   "vertical frequency sum " + std::to_string(st.vertical_freq_sum));
    }
    return {13, "first-passage percolation", ck.pass, ck.detail.str()};
}

// ---- criterion 14: determinism -------------------------------------------------------

CriterionResult c14() {
    Check ck;
    using namespace experiments;
    auto render = [&](const RunConfig& cfg) {
        std::ostringstream os;
        std::string meta;
        run_experiment(cfg, os, &meta);
        return os.str();
    };
    {
        RunConfig cfg;
        cfg.experiment = "arm-exponents";
        cfg.lattice = "tri";
        cfg.params["arms"] = 4;
        cfg.params["rmax"] = 16;
        cfg.trials = 5000;
        cfg.seed = 7;
        cfg.threads = 1;
        std::string a = render(cfg);
        std::string b = render(cfg);
        cfg.threads = 2;
        std::string c = render(cfg);
        ck.require(a == b, "arm-exponents rerun differs");
        ck.require(a == c, "arm-exponents differs across worker counts");
    }
    {
        RunConfig cfg;
        cfg.experiment = "fpp-variance";
        cfg.sizes = {8, 16};
        cfg.params["a"] = 1;
        cfg.params["b"] = 2;
        cfg.trials = 100;
        cfg.seed = 9;
        cfg.threads = 2;
        std::string a = render(cfg);
        std::string b = render(cfg);
        ck.require(a == b, "fpp-variance rerun differs");
    }
    {
        RunConfig cfg;
        cfg.experiment = "spectrum-zoo";
        cfg.function = "maj";
        cfg.params["n"] = 9;
        cfg.seed = 3;
        std::string a = render(cfg);
        std::string b = render(cfg);
        ck.require(a == b, "spectrum-zoo rerun differs");
    }
    return {14, "determinism", ck.pass, ck.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& progress, const std::vector<int>& only,
                                     int threads) {
    auto want = [&](int id) {
        return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
    };
    std::vector<CriterionResult> out;
    auto emit = [&](CriterionResult r) {
        progress << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name
                 << ")";
        if (!r.detail.empty()) progress << "  [" << r.detail << "]";
        progress << std::endl;
        out.push_back(std::move(r));
    };
    if (want(1)) emit(c1());
    if (want(2)) emit(c2());
    if (want(3)) emit(c3());
    if (want(4)) emit(c4());
    if (want(5)) emit(c5());
    if (want(6)) emit(c6());
    if (want(7)) emit(c7());
    if (want(8)) emit(c8(threads));
    if (want(9)) emit(c9(threads));
    if (want(10)) emit(c10(threads));
    if (want(11)) emit(c11(threads));
    if (want(12)) emit(c12(threads));
    if (want(13)) emit(c13(threads));
    if (want(14)) emit(c14());
    return out;
}

}  // namespace noiselab::acceptance
