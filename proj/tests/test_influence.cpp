#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "noiselab/influence.hpp"
#include "noiselab/spectral.hpp"
#include "noiselab/zoo.hpp"

using namespace noiselab;

namespace {

std::vector<BitFunction> small_zoo_pm1() {
    std::vector<BitFunction> fs;
    fs.push_back(zoo::dictator(5));
    fs.push_back(zoo::parity(6));
    fs.push_back(zoo::majority(5));
    fs.push_back(zoo::iter3maj(2));
    fs.push_back(zoo::tribes(10).to_pm1());
    fs.push_back(zoo::random_function(9, 321));
    return fs;
}

}  // namespace

TEST_CASE("pivotal sets: parity, constants, MAJ3") {
    BitFunction par = zoo::parity(7).materialize();
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        std::uint32_t m = static_cast<std::uint32_t>(rng.below(128));
        CHECK(pivotal_set_mask(par, m) == 0b1111111);
    }
    BitFunction c = BitFunction::from_table(4, Range::ZO, std::vector<double>(16, 1.0));
    CHECK(pivotal_set_mask(c, 3) == 0);
    // MAJ3 at (+,+,-): flipping bit 0 or 1 changes the sign, bit 2 does not
    BitFunction maj = zoo::majority(3).materialize();
    CHECK(pivotal_set_mask(maj, 0b011) == 0b011);
}

TEST_CASE("influence closed forms") {
    InfluenceVector d = influence_vector_exact(zoo::dictator(6));
    CHECK(d.values[0] == doctest::Approx(1.0));
    for (int i = 1; i < 6; ++i) CHECK(d.values[i] == doctest::Approx(0.0));
    InfluenceVector m3 = influence_vector_exact(zoo::majority(3));
    for (double v : m3.values) CHECK(v == doctest::Approx(0.5));
    CHECK(m3.total() == doctest::Approx(1.5));
    InfluenceVector m5 = influence_vector_exact(zoo::majority(5));
    CHECK(m5.total() == doctest::Approx(15.0 / 8));
}

TEST_CASE("influence at biased levels sums the off-bit measures") {
    // DICT: I_1^p = 1 at every p
    for (double p : {0.2, 0.5, 0.8})
        CHECK(influence_exact(zoo::dictator(4), 0, p) == doctest::Approx(1.0));
    // MAJ3: pivotal iff the other two bits disagree: I^p = 2p(1-p)
    for (double p : {0.1, 0.3, 0.7})
        CHECK(influence_exact(zoo::majority(3), 0, p) == doctest::Approx(2 * p * (1 - p)));
}

TEST_CASE("MC influence agrees with exact") {
    BitFunction f = zoo::tribes(12);
    InfluenceVector ex = influence_vector_exact(f, 0.5);
    InfluenceVector mc = influence_vector_mc(f, 0.5, 20000, 99);
    for (int i = 0; i < f.arity(); ++i)
        CHECK(std::abs(mc.values[i] - ex.values[i]) <= 4 * mc.stderrs[i] + 1e-9);
}

TEST_CASE("spectral identities for influences") {
    for (const auto& f : small_zoo_pm1()) {
        BitFunction zo = f.to_zo();
        SpectrumTable spec = walsh_transform(zo);
        InfluenceVector inf = influence_vector_exact(zo, 0.5);
        const int n = f.arity();
        // I_k = 4 sum_{S ni k} fhat(S)^2 for ZO
        for (int k = 0; k < n; ++k) {
            double s = 0;
            for (std::uint32_t m = 0; m < spec.size(); ++m)
                if (m >> k & 1) s += spec[m] * spec[m];
            CHECK(std::abs(inf.values[k] - 4 * s) <= 1e-10);
        }
        // I(f) = 4 sum |S| fhat^2
        double tot = 0;
        for (std::uint32_t m = 0; m < spec.size(); ++m)
            tot += __builtin_popcount(m) * spec[m] * spec[m];
        CHECK(std::abs(inf.total() - 4 * tot) <= 1e-10);
    }
}

TEST_CASE("monotone identity I_k = 2 fhat({k}), and parity breaks it") {
    for (const auto& f : {zoo::majority(5), zoo::tribes(8).to_pm1(), zoo::dictator(4)}) {
        BitFunction zo = f.to_zo();
        REQUIRE(is_monotone(zo));
        SpectrumTable spec = walsh_transform(zo);
        InfluenceVector inf = influence_vector_exact(zo, 0.5);
        for (int k = 0; k < zo.arity(); ++k)
            CHECK(std::abs(inf.values[k] - 2 * spec[1u << k]) <= 1e-10);
    }
    BitFunction par = zoo::parity(4).to_zo();
    CHECK_FALSE(is_monotone(par));
    SpectrumTable spec = walsh_transform(par);
    InfluenceVector inf = influence_vector_exact(par, 0.5);
    CHECK(std::abs(inf.values[0] - 2 * spec[1]) > 0.5);  // identity fails without monotonicity
}

TEST_CASE("E|P| equals total influence") {
    for (const auto& f : small_zoo_pm1()) {
        BitFunction g = f.exact() ? f : f.materialize();
        double ep = 0;
        for (std::uint32_t m = 0; m < g.table_size(); ++m)
            ep += __builtin_popcount(pivotal_set_mask(g, m));
        ep /= static_cast<double>(g.table_size());
        CHECK(ep == doctest::Approx(influence_vector_exact(g).total()).epsilon(1e-12));
    }
}

TEST_CASE("set influence: full set, singletons, monotone MC") {
    BitFunction f = zoo::majority(5);
    const std::uint32_t full = (1u << 5) - 1;
    CHECK(set_influence_exact(f, full) == doctest::Approx(1.0));
    for (int i = 0; i < 5; ++i)
        CHECK(set_influence_exact(f, 1u << i) ==
              doctest::Approx(influence_exact(f, i, 0.5)).epsilon(1e-12));
    // zoo singletons at n <= 12
    for (const auto& g : small_zoo_pm1())
        for (int i = 0; i < std::min(4, g.arity()); ++i)
            CHECK(set_influence_exact(g, 1u << i) ==
                  doctest::Approx(influence_exact(g, i, 0.5)).epsilon(1e-12));
}

TEST_CASE("majority set influence crosses from 0 to 1 around sqrt(n)") {
    const int n = 10001;
    BitFunction f = zoo::majority(n);
    auto make_set = [&](int size) {
        std::vector<int> s(size);
        for (int i = 0; i < size; ++i) s[i] = i;
        return s;
    };
    int big = static_cast<int>(std::pow(n, 0.5 + 0.2));
    int small = static_cast<int>(std::pow(n, 0.5 - 0.2));
    Estimate hi = set_influence_mc(f, make_set(big), true, 4000, 10);
    Estimate lo = set_influence_mc(f, make_set(small), true, 4000, 11);
    CHECK(hi.mean > 0.95);
    CHECK(lo.mean < 0.35);
}

TEST_CASE("Russo formula: exact finite differences") {
    // DICT: slope 1 everywhere
    BitFunction d = zoo::dictator(4).to_zo();
    for (double p : {0.3, 0.5, 0.7}) {
        RussoCheck rc = russo_check(d, p);
        CHECK(rc.slope == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(rc.gap <= 1e-4);
    }
    // MAJ3 at 1/2: slope of p^3 + 3p^2(1-p) is 3/2
    BitFunction m = zoo::majority(3).to_zo();
    RussoCheck rc = russo_check(m, 0.5);
    CHECK(rc.slope == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(rc.total_influence == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(rc.gap <= 1e-4);
    // tribes-16 at the spec's grid
    BitFunction t = zoo::tribes(16);
    for (double p : {0.3, 0.5, 0.7}) CHECK(russo_check(t, p).gap <= 1e-4);
    CHECK_THROWS(russo_check(zoo::parity(4).to_zo(), 0.5));
}

TEST_CASE("Russo in MC mode on large tribes: both sides agree within error") {
    BitFunction t = zoo::tribes(1 << 10);
    const double p = 0.5, dp = 0.02;
    const std::uint64_t trials = 20000;
    Rng rng(5);
    auto estimate_mean = [&](double level, std::uint64_t sd) {
        ProductMeasure mu(level);
        Rng r(sd);
        std::uint64_t hits = 0;
        for (std::uint64_t k = 0; k < trials; ++k)
            if (t(sample_config(t.arity(), mu, r)) == 1.0) ++hits;
        return binomial_estimate(hits, trials, sd);
    };
    Estimate above = estimate_mean(p + dp, 101), below = estimate_mean(p - dp, 102);
    double slope = (above.mean - below.mean) / (2 * dp);
    double slope_err = std::sqrt(above.stderr_ * above.stderr_ + below.stderr_ * below.stderr_) / (2 * dp);
    // right side: sum of influences via the closed form
    auto inf = zoo::tribes_influences_zo(1 << 10);
    double total = 0;
    for (double v : inf) total += v;
    CHECK(std::abs(slope - total) <= 3 * slope_err + 0.05 * total);
}

TEST_CASE("edge boundary identity") {
    // indicator of the all-ones vertex in the 3-cube: 3 boundary edges
    std::vector<double> t(8, 0.0);
    t[7] = 1.0;
    BitFunction f = BitFunction::from_table(3, Range::ZO, t);
    CHECK(edge_boundary(f) == 3);
    CHECK(influence_vector_exact(f).total() == doctest::Approx(3.0 / 4));
    // PAR in ZO form: every edge is a boundary edge
    BitFunction par = zoo::parity(5).to_zo();
    CHECK(edge_boundary(par) == 5ull * 16);
    CHECK(influence_vector_exact(par).total() == doctest::Approx(5.0));
    // identity on random functions
    Rng rng(6);
    for (int k = 0; k < 100; ++k) {
        int n = 3 + static_cast<int>(rng.below(7));
        std::vector<double> tab(std::size_t(1) << n);
        for (double& v : tab) v = rng.next_u64() & 1;
        BitFunction g = BitFunction::from_table(n, Range::ZO, std::move(tab));
        double lhs = influence_vector_exact(g).total();
        double rhs = static_cast<double>(edge_boundary(g)) / std::ldexp(1.0, n - 1);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("inequality diagnostics") {
    auto m3 = inequality_diagnostics(zoo::majority(3));
    CHECK(m3.variance == doctest::Approx(1.0));
    CHECK(m3.total_influence == doctest::Approx(1.5));
    CHECK(m3.poincare_holds);
    CHECK(m3.sqrt_n_applicable);
    CHECK(m3.sqrt_n_holds);  // 3/2 <= sqrt(3)
    auto par = inequality_diagnostics(zoo::parity(6));
    CHECK(par.variance == doctest::Approx(1.0));
    CHECK(par.total_influence == doctest::Approx(6.0));
    CHECK(par.poincare_holds);
    CHECK_FALSE(par.sqrt_n_applicable);
    auto tr = inequality_diagnostics(zoo::tribes(16).to_pm1());
    CHECK(tr.poincare_holds);
    CHECK(tr.sqrt_n_holds);
    for (const auto& f : small_zoo_pm1()) CHECK(inequality_diagnostics(f).poincare_holds);
}

TEST_CASE("majority maximizes total influence among monotone functions (n <= 4)") {
    // n = 3: filter all 256 ZO functions for monotonicity
    double best = 0;
    for (std::uint32_t code = 0; code < 256; ++code) {
        std::vector<double> t(8);
        for (int m = 0; m < 8; ++m) t[m] = (code >> m) & 1;
        BitFunction f = BitFunction::from_table(3, Range::ZO, std::move(t));
        if (!is_monotone(f)) continue;
        best = std::max(best, influence_vector_exact(f).total());
    }
    CHECK(best == doctest::Approx(influence_vector_exact(zoo::majority(3).to_zo()).total()));
    // n = 4 (even): the maximum matches the 4-bit majority-with-tie-break family;
    // verify no monotone function beats the best threshold function
    double best4 = 0;
    for (std::uint32_t code = 0; code < 65536; ++code) {
        std::vector<double> t(16);
        for (int m = 0; m < 16; ++m) t[m] = (code >> m) & 1;
        BitFunction f = BitFunction::from_table(4, Range::ZO, std::move(t));
        if (!is_monotone(f)) continue;
        best4 = std::max(best4, influence_vector_exact(f).total());
    }
    // threshold at >= 2 ones: I = 4 * P(exactly-one-off-bit boundary) = 4 * C(3,1)/8
    CHECK(best4 == doctest::Approx(1.5));
}

TEST_CASE("threshold curves: DICT window, MAJ window shrinks like n^{-1/2}") {
    std::vector<double> grid;
    for (double p = 0.025; p < 1.0; p += 0.025) grid.push_back(p);
    auto d = threshold_curve(zoo::dictator(4).to_zo(), grid, 4000, 1);
    auto wd = d.window_width();
    REQUIRE(wd.has_value());
    CHECK(*wd == doctest::Approx(0.8).epsilon(0.08));

    std::vector<double> fine;
    for (double p = 0.35; p <= 0.65; p += 0.005) fine.push_back(p);
    auto w101 = threshold_curve(zoo::majority(101).to_zo(), fine, 4000, 2).window_width();
    auto w1001 = threshold_curve(zoo::majority(1001).to_zo(), fine, 4000, 3).window_width();
    REQUIRE(w101.has_value());
    REQUIRE(w1001.has_value());
    double shrink = *w101 / *w1001;
    double ideal = std::sqrt(1001.0 / 101.0);
    CHECK(shrink > ideal / 2);
    CHECK(shrink < ideal * 2);
}

TEST_CASE("tribes threshold window trend ~ 1/log n") {
    std::vector<double> grid;
    for (double p = 0.2; p <= 0.8; p += 0.01) grid.push_back(p);
    std::vector<double> widths;
    for (int e : {8, 10, 12}) {
        auto w = threshold_curve(zoo::tribes(1 << e), grid, 3000, e).window_width();
        REQUIRE(w.has_value());
        widths.push_back(*w);
    }
    CHECK(widths[2] < widths[0]);  // shrinking with n
}
