#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "noiselab/algorithms.hpp"
#include "noiselab/influence.hpp"
#include "noiselab/spectral.hpp"
#include "noiselab/zoo.hpp"

using namespace noiselab;
using namespace noiselab::alg;

TEST_CASE("full scan queries everything and returns the right value") {
    BitFunction f = zoo::random_function(6, 42).materialize();
    auto alg = full_scan(6);
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        std::uint32_t omega = std::uint32_t(rng.below(64));
        RunRecord rec = run(*alg, f, omega, 0);
        CHECK(rec.queried == 0b111111);
        CHECK(rec.value == f.at(omega));
    }
}

TEST_CASE("stopping before determination is a hard error") {
    class BadStop final : public QueryAlgorithm {
      public:
        int arity() const override { return 4; }
        std::uint64_t randomness_count() const override { return 1; }
        Action next(std::uint64_t, std::uint32_t, std::uint32_t) const override {
            return Action::halt();
        }
    };
    BadStop bad;
    BitFunction par = zoo::parity(4).materialize();
    CHECK_THROWS(run(bad, par, 5, 0));
}

TEST_CASE("runs are deterministic in (omega, randomness)") {
    BitFunction f = zoo::majority(3).materialize();
    auto alg = maj3_optimal();
    for (std::uint32_t omega = 0; omega < 8; ++omega)
        for (std::uint64_t r = 0; r < 3; ++r) {
            RunRecord a = run(*alg, f, omega, r);
            RunRecord b = run(*alg, f, omega, r);
            CHECK(a.queried == b.queried);
            CHECK(a.value == b.value);
        }
}

TEST_CASE("MAJ3 optimal: delta = 5/6 and cost = 2.5 exactly") {
    BitFunction f = zoo::majority(3).materialize();
    auto alg = maj3_optimal();
    RevealmentReport rep = revealment_exact(*alg, f);
    CHECK(rep.delta == doctest::Approx(5.0 / 6).epsilon(1e-12));
    CHECK(rep.cost == doctest::Approx(2.5).epsilon(1e-12));
    for (double v : rep.per_bit) CHECK(v == doctest::Approx(5.0 / 6).epsilon(1e-12));
    // sum rule: per-bit probabilities add up to the cost
    double s = 0;
    for (double v : rep.per_bit) s += v;
    CHECK(s == doctest::Approx(rep.cost).epsilon(1e-12));
}

TEST_CASE("revealment MC agrees with exact") {
    BitFunction f = zoo::tribes(8).materialize();
    auto alg = tribes_block_scan(8);
    RevealmentReport ex = revealment_exact(*alg, f);
    RevealmentReport mc = revealment_mc(*alg, f, 40000, 7);
    for (int i = 0; i < 8; ++i) {
        double sigma = std::sqrt(std::max(ex.per_bit[i] * (1 - ex.per_bit[i]), 1e-4) / 40000.0);
        CHECK(std::abs(mc.per_bit[i] - ex.per_bit[i]) <= 4 * sigma);
    }
}

TEST_CASE("tribes block scan: closed-form revealment matches enumeration") {
    for (int n : {8, 12, 16}) {
        BitFunction f = zoo::tribes(n).materialize();
        auto alg = tribes_block_scan(n);
        RevealmentReport ex = revealment_exact(*alg, f);
        RevealmentReport cf = tribes_block_scan_revealment(n);
        for (int i = 0; i < n; ++i)
            CHECK(ex.per_bit[i] == doctest::Approx(cf.per_bit[i]).epsilon(1e-12));
        CHECK(ex.cost == doctest::Approx(cf.cost).epsilon(1e-12));
        CHECK(ex.delta == doctest::Approx(cf.delta).epsilon(1e-12));
    }
}

TEST_CASE("queried set is always a witness") {
    Rng rng(17);
    BitFunction tribes16 = zoo::tribes(16).materialize();
    auto scan = tribes_block_scan(16);
    BitFunction it9 = zoo::iter3maj(2).materialize();
    auto rec9 = iter3maj_recursive(2);
    for (int t = 0; t < 300; ++t) {
        {
            std::uint32_t omega = std::uint32_t(rng.below(1u << 16));
            RunRecord rec = run(*scan, tribes16, omega, 0);
            for (int k = 0; k < 20; ++k) {
                std::uint32_t noise = std::uint32_t(rng.next_u64()) & ~rec.queried & 0xFFFF;
                std::uint32_t w2 = (omega & rec.queried) | noise;
                CHECK(tribes16.at(w2) == rec.value);
            }
        }
        {
            std::uint32_t omega = std::uint32_t(rng.below(1u << 9));
            std::uint64_t r = rng.below(rec9->randomness_count());
            RunRecord rec = run(*rec9, it9, omega, r);
            for (int k = 0; k < 10; ++k) {
                std::uint32_t noise = std::uint32_t(rng.next_u64()) & ~rec.queried & 0x1FF;
                std::uint32_t w2 = (omega & rec.queried) | noise;
                CHECK(it9.at(w2) == rec.value);
            }
        }
    }
}

TEST_CASE("spectral revealment bound on the zoo/algorithm matrix") {
    struct Pair {
        BitFunction f;
        RevealmentReport rep;
    };
    std::vector<Pair> pairs;
    {
        BitFunction f = zoo::majority(3).materialize();
        pairs.push_back({f, revealment_exact(*maj3_optimal(), f)});
        pairs.push_back({f, revealment_exact(*full_scan(3), f)});
    }
    {
        BitFunction f = zoo::majority(5).materialize();
        pairs.push_back({f, revealment_exact(*majority_random_order(5), f)});
    }
    {
        BitFunction f = zoo::parity(6).materialize();
        pairs.push_back({f, revealment_exact(*full_scan(6), f)});
    }
    {
        BitFunction f = zoo::dictator(5).materialize();
        pairs.push_back({f, revealment_exact(*first_bit(5), f)});
    }
    {
        BitFunction f = zoo::tribes(12).materialize();
        pairs.push_back({f, revealment_exact(*tribes_block_scan(12), f)});
    }
    {
        BitFunction f = zoo::iter3maj(2).materialize();
        pairs.push_back({f, revealment_exact(*iter3maj_recursive(2), f)});
    }
    for (const auto& pr : pairs) {
        auto energy = energy_spectrum(walsh_transform(pr.f));
        double ef2 = 0;
        for (double v : pr.f.table()) ef2 += v * v;
        ef2 /= double(pr.f.table_size());
        SsBoundReport ss = check_ss_bound(energy, pr.rep.delta, ef2);
        CHECK(ss.holds);
    }
}

TEST_CASE("SS bound with exact closed forms for tribes at n = 64") {
    auto energy = zoo::tribes_energy_spectrum_zo(64);
    RevealmentReport rep = tribes_block_scan_revealment(64);
    double ef2 = zoo::tribes_mean_zo(64);  // ZO: f^2 = f
    SsBoundReport ss = check_ss_bound(energy, rep.delta, ef2);
    CHECK(ss.holds);
}

TEST_CASE("MAJ3 exact check values from the bound") {
    auto energy = energy_spectrum(walsh_transform(zoo::majority(3)));
    CHECK(energy[1] == doctest::Approx(0.75));
    SsBoundReport ss = check_ss_bound(energy, 5.0 / 6, 1.0);
    CHECK(ss.holds);  // 3/4 <= 5/6 and 1/4 <= 5/2
}

TEST_CASE("OS and OSSS lower bounds for monotone pairs") {
    {
        BitFunction f = zoo::majority(3);
        RevealmentReport rep = revealment_exact(*maj3_optimal(), f.materialize());
        OsOsssReport r = check_os_osss(f, rep.cost, rep.delta);
        CHECK(r.cost == doctest::Approx(2.5));
        CHECK(r.total_influence == doctest::Approx(1.5));
        CHECK(r.os_holds);  // 2.5 >= 2.25
        CHECK(r.osss_holds);
    }
    {
        BitFunction f = zoo::dictator(4);
        RevealmentReport rep = revealment_exact(*first_bit(4), f.materialize());
        OsOsssReport r = check_os_osss(f, rep.cost, rep.delta);
        CHECK(r.cost == doctest::Approx(1.0));
        CHECK(r.os_holds);
        CHECK(r.osss_holds);
    }
    {
        BitFunction f = zoo::tribes(12).to_pm1();
        RevealmentReport rep = revealment_exact(*tribes_block_scan(12), f.materialize());
        OsOsssReport r = check_os_osss(f, rep.cost, rep.delta);
        CHECK(r.os_holds);
        CHECK(r.osss_holds);
    }
    {
        BitFunction f = zoo::iter3maj(2);
        RevealmentReport rep = revealment_exact(*iter3maj_recursive(2), f.materialize());
        OsOsssReport r = check_os_osss(f, rep.cost, rep.delta);
        CHECK(r.os_holds);
        CHECK(r.osss_holds);
    }
    {
        BitFunction f = zoo::majority(5);
        RevealmentReport rep = revealment_exact(*majority_random_order(5), f.materialize());
        OsOsssReport r = check_os_osss(f, rep.cost, rep.delta);
        CHECK(r.os_holds);
        CHECK(r.osss_holds);
    }
    CHECK_THROWS(check_os_osss(zoo::parity(4), 4.0, 1.0));
}

TEST_CASE("witness sizes") {
    // constant function: empty witness
    BitFunction c = BitFunction::from_table(4, Range::ZO, std::vector<double>(16, 1.0));
    CHECK(witness_size_exact(c, 3) == 0);
    // parity: no proper subset determines it
    BitFunction par = zoo::parity(5).materialize();
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        std::uint32_t omega = std::uint32_t(rng.below(32));
        CHECK(witness_size_exact(par, omega) == 5);
        CHECK(witness_size_greedy(par, omega) == 5);
    }
    // clique on 5 vertices, k = 3: an omega holding exactly one triangle is
    // certified by its 3 edges
    BitFunction cl = zoo::clique(5, 3).materialize();
    // edges (0,1), (0,2), (1,2) are ids 0, 1, 4 in lexicographic pair order
    std::uint32_t omega = (1u << 0) | (1u << 1) | (1u << 4);
    REQUIRE(cl.at(omega) == 1.0);
    CHECK(witness_size_exact(cl, omega) == 3);
    CHECK(witness_size_greedy(cl, omega) >= 3);
    // greedy is an upper bound
    BitFunction maj = zoo::majority(5).materialize();
    for (int t = 0; t < 10; ++t) {
        std::uint32_t w = std::uint32_t(rng.below(32));
        CHECK(witness_size_greedy(maj, w) >= witness_size_exact(maj, w));
    }
    // queried set of any algorithm is at least the witness size
    auto alg = majority_random_order(5);
    for (int t = 0; t < 10; ++t) {
        std::uint32_t w = std::uint32_t(rng.below(32));
        RunRecord rec = run(*alg, maj, w, rng.below(120));
        CHECK(__builtin_popcount(rec.queried) >= witness_size_exact(maj, w));
    }
}

TEST_CASE("interface crossing revealment: exact enumeration matches MC") {
    perc::TriWindow win{2, 2};
    RevealmentReport ex = interface_crossing_revealment_exact(win);
    RevealmentReport mc = interface_crossing_revealment_mc(win, 40000, 5);
    for (int i = 0; i < win.size(); ++i) {
        double sigma = std::sqrt(std::max(ex.per_bit[i] * (1 - ex.per_bit[i]), 1e-4) / 40000.0);
        CHECK(std::abs(mc.per_bit[i] - ex.per_bit[i]) <= 4 * sigma);
    }
    perc::TriWindow win43{4, 3};
    RevealmentReport ex43 = interface_crossing_revealment_exact(win43);
    RevealmentReport mc43 = interface_crossing_revealment_mc(win43, 40000, 6);
    for (int i = 0; i < win43.size(); ++i) {
        double sigma =
            std::sqrt(std::max(ex43.per_bit[i] * (1 - ex43.per_bit[i]), 1e-4) / 40000.0);
        CHECK(std::abs(mc43.per_bit[i] - ex43.per_bit[i]) <= 4.5 * sigma);
    }
}

TEST_CASE("crossing algorithm revealment decreases with window size") {
    RevealmentReport r8 = interface_crossing_revealment_mc(perc::TriWindow{8, 8}, 4000, 9);
    RevealmentReport r16 = interface_crossing_revealment_mc(perc::TriWindow{16, 16}, 4000, 10);
    CHECK(r16.delta < r8.delta);
}

TEST_CASE("radial revealment: sane summary") {
    RevealmentReport rep = radial_revealment_mc(3, 10, 1500, 11);
    CHECK(rep.delta <= 1.0);
    CHECK(rep.cost <= double(rep.n));
    CHECK(rep.delta > 0.0);
}
