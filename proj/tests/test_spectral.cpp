#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "noiselab/influence.hpp"
#include "noiselab/spectral.hpp"
#include "noiselab/zoo.hpp"

using namespace noiselab;

namespace {

// brute-force oracle: fhat(S) = 2^-n sum_omega f(omega) chi_S(omega)
double fourier_brute(const BitFunction& f, std::uint32_t s) {
    const BitFunction g = f.exact() ? f : f.materialize();
    double sum = 0;
    for (std::uint32_t m = 0; m < g.table_size(); ++m) {
        int minus_in_s = __builtin_popcount(s & ~m);
        sum += g.at(m) * ((minus_in_s & 1) ? -1.0 : 1.0);
    }
    return sum / static_cast<double>(g.table_size());
}

std::vector<BitFunction> small_zoo(int max_n) {
    std::vector<BitFunction> fs;
    fs.push_back(zoo::dictator(std::min(6, max_n)));
    fs.push_back(zoo::parity(std::min(5, max_n)));
    fs.push_back(zoo::majority(3));
    fs.push_back(zoo::majority(std::min(9, max_n) | 1));
    fs.push_back(zoo::iter3maj(2));
    fs.push_back(zoo::tribes(std::min(8, max_n)).to_pm1());
    fs.push_back(zoo::clique(5, 3).to_pm1());
    fs.push_back(zoo::random_function(std::min(10, max_n), 123));
    return fs;
}

}  // namespace

TEST_CASE("transform matches brute-force definition") {
    for (const auto& f : small_zoo(10)) {
        SpectrumTable spec = walsh_transform(f);
        Rng rng(99);
        for (int t = 0; t < 20; ++t) {
            std::uint32_t s = static_cast<std::uint32_t>(rng.below(spec.size()));
            CHECK(spec[s] == doctest::Approx(fourier_brute(f, s)).epsilon(1e-12));
        }
    }
}

TEST_CASE("DICT and PAR spectra are single atoms") {
    SpectrumTable d = walsh_transform(zoo::dictator(6));
    for (std::uint32_t s = 0; s < d.size(); ++s)
        CHECK(d[s] == doctest::Approx(s == 1 ? 1.0 : 0.0).epsilon(1e-12));
    SpectrumTable p = walsh_transform(zoo::parity(6));
    for (std::uint32_t s = 0; s < p.size(); ++s)
        CHECK(p[s] == doctest::Approx(s == 63 ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("MAJ3 spectrum: level-1 coefficients 1/2, top -1/2") {
    SpectrumTable m = walsh_transform(zoo::majority(3));
    CHECK(m[0b001] == doctest::Approx(0.5));
    CHECK(m[0b010] == doctest::Approx(0.5));
    CHECK(m[0b100] == doctest::Approx(0.5));
    CHECK(m[0b111] == doctest::Approx(-0.5));
    CHECK(m[0b000] == doctest::Approx(0.0));
    CHECK(m[0b011] == doctest::Approx(0.0));
}

TEST_CASE("Parseval to 1e-10 on the zoo") {
    for (const auto& f : small_zoo(12)) {
        const BitFunction g = f.exact() ? f : f.materialize();
        SpectrumTable spec = walsh_transform(g);
        double ef2 = 0;
        for (double v : g.table()) ef2 += v * v;
        ef2 /= static_cast<double>(g.table_size());
        CHECK(std::abs(spec.total_mass() - ef2) <= 1e-10);
        CHECK(spec[0] == doctest::Approx(expectation_at_p(g, 0.5)).epsilon(1e-10));
    }
}

TEST_CASE("raw butterfly applied twice multiplies by 2^n") {
    Rng rng(17);
    std::vector<double> t(64), orig;
    for (double& v : t) v = rng.next_double() - 0.5;
    orig = t;
    fwht_inplace(t);
    fwht_inplace(t);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(t[i] == doctest::Approx(64.0 * orig[i]).epsilon(1e-12));
}

TEST_CASE("energy spectrum of MAJ3 and PAR5") {
    auto e = energy_spectrum(walsh_transform(zoo::majority(3)));
    CHECK(e[0] == doctest::Approx(0.0));
    CHECK(e[1] == doctest::Approx(0.75));
    CHECK(e[2] == doctest::Approx(0.0));
    CHECK(e[3] == doctest::Approx(0.25));
    auto p = energy_spectrum(walsh_transform(zoo::parity(5)));
    for (int m = 0; m < 5; ++m) CHECK(p[m] == doctest::Approx(0.0));
    CHECK(p[5] == doctest::Approx(1.0));
}

TEST_CASE("majority level-1 energy approaches 2/pi") {
    double prev_err = 1.0;
    for (int n : {9, 11, 13}) {
        auto e = energy_spectrum(walsh_transform(zoo::majority(n)));
        double err = std::abs(e[1] - 2.0 / M_PI);
        CHECK(err < 0.05);
        CHECK(err < prev_err + 1e-9);
        prev_err = err;
    }
}

TEST_CASE("noise operator scales by rho^|S|") {
    SpectrumTable m = walsh_transform(zoo::majority(3));
    SpectrumTable half = noise_operator(m, 0.5);
    CHECK(half[0b001] == doctest::Approx(0.25));
    CHECK(half[0b111] == doctest::Approx(-1.0 / 16));
    SpectrumTable same = noise_operator(m, 1.0);
    for (std::uint32_t s = 0; s < m.size(); ++s) CHECK(same[s] == m[s]);
    SpectrumTable zero = noise_operator(m, 0.0);
    for (std::uint32_t s = 1; s < m.size(); ++s) CHECK(zero[s] == 0.0);
    CHECK(zero[0] == m[0]);
    CHECK_THROWS(noise_operator(m, 1.5));
}

TEST_CASE("noise operator agrees with direct conditional averaging (MC)") {
    BitFunction f = zoo::majority(5);
    double rho = 0.6;
    SpectrumTable tf = noise_operator(walsh_transform(f), rho);
    // reconstruct T_rho f pointwise from coefficients
    const int n = 5;
    auto direct = noise_operator_direct_mc(f, rho, 20000, 4242);
    for (std::uint32_t m = 0; m < direct.size(); ++m) {
        double exact = 0;
        for (std::uint32_t s = 0; s < tf.size(); ++s) {
            int minus = __builtin_popcount(s & ~m);
            exact += tf[s] * ((minus & 1) ? -1.0 : 1.0);
        }
        (void)n;
        double sigma = 1.0 / std::sqrt(20000.0);
        CHECK(std::abs(direct[m] - exact) <= 4 * sigma);
    }
}

TEST_CASE("correlation_exact closed forms") {
    for (double eps : {0.1, 0.3, 0.7}) {
        CHECK(correlation_exact(walsh_transform(zoo::dictator(7)), eps) ==
              doctest::Approx(1 - eps).epsilon(1e-12));
        CHECK(correlation_exact(walsh_transform(zoo::parity(7)), eps) ==
              doctest::Approx(std::pow(1 - eps, 7)).epsilon(1e-12));
    }
    CHECK(correlation_exact(walsh_transform(zoo::majority(3)), 0.5) ==
          doctest::Approx(13.0 / 32).epsilon(1e-12));
}

TEST_CASE("correlation is non-increasing in eps") {
    SpectrumTable spec = walsh_transform(zoo::random_function(8, 5));
    double prev = correlation_exact(spec, 0.0);
    for (double eps = 0.05; eps <= 1.0; eps += 0.05) {
        double c = correlation_exact(spec, eps);
        CHECK(c <= prev + 1e-12);
        prev = c;
    }
}

TEST_CASE("correlation_mc matches exact within 4 sigma; eps=0 gives E[f^2]") {
    Rng seeds(2024);
    for (int k = 0; k < 12; ++k) {
        BitFunction f = zoo::random_function(8, seeds.next_u64());
        SpectrumTable spec = walsh_transform(f);
        for (double eps : {0.1, 0.5}) {
            Estimate e = correlation_mc(f, eps, 20000, seeds.next_u64());
            CHECK(std::abs(e.mean - correlation_exact(spec, eps)) <= 4 * e.stderr_ + 1e-9);
        }
        Estimate z = correlation_mc(f, 0.0, 100, 1);
        CHECK(z.mean == doctest::Approx(1.0));  // PM1: f^2 = 1
    }
}

TEST_CASE("stability gap closed forms") {
    CHECK(stability_gap(walsh_transform(zoo::majority(3)), 1.0) == doctest::Approx(0.5));
    for (double eps : {0.2, 0.6})
        CHECK(stability_gap(walsh_transform(zoo::dictator(5)), eps) ==
              doctest::Approx(eps / 2).epsilon(1e-12));
    CHECK_THROWS(stability_gap(walsh_transform(zoo::tribes(8)), 0.5));
}

TEST_CASE("spectral sampler matches the squared-coefficient law") {
    BitFunction f = zoo::random_function(6, 77);
    SpectrumTable spec = walsh_transform(f);
    SpectralSampler sampler(spec);
    Rng rng(31337);
    const int draws = 200000;
    std::vector<int> count(spec.size(), 0);
    for (int t = 0; t < draws; ++t) ++count[sampler.sample(rng)];
    // chi-square against fhat(S)^2 / E[f^2]
    double chi2 = 0;
    int dof = 0;
    for (std::uint32_t s = 0; s < spec.size(); ++s) {
        double p = spec[s] * spec[s] / spec.total_mass();
        double expect = p * draws;
        if (expect < 5) continue;
        chi2 += (count[s] - expect) * (count[s] - expect) / expect;
        ++dof;
    }
    // dof ~ 60; 0.001 quantile of chi2_60 is ~ 99.6
    CHECK(chi2 < dof + 4.0 * std::sqrt(2.0 * dof) + 20);
}

TEST_CASE("global spectral draw for PAR is the full set") {
    SpectrumTable spec = walsh_transform(zoo::parity(5));
    Rng rng(8);
    for (int t = 0; t < 50; ++t) CHECK(sample_spectral(spec, rng) == 0b11111);
}

TEST_CASE("empty spectrum is signaled") {
    BitFunction zero = BitFunction::from_table(3, Range::Real, std::vector<double>(8, 0.0));
    Rng rng(1);
    CHECK_THROWS_AS(sample_spectral(walsh_transform(zero), rng), std::domain_error);
}

TEST_CASE("sub-domain law: restriction average equals mask marginalization") {
    for (const auto& f : small_zoo(10)) {
        if (f.arity() > 12) continue;
        SpectrumTable spec = walsh_transform(f);
        std::uint32_t a_mask = 0b1011 & ((1u << f.arity()) - 1);
        auto by_restriction = subdomain_marginal_by_restriction(f, a_mask);
        // compare on every packed subset of A
        int na = __builtin_popcount(a_mask);
        for (std::uint32_t packed = 0; packed < (1u << na); ++packed) {
            // unpack to full mask
            std::uint32_t s0 = 0;
            int k = 0;
            for (int i = 0; i < f.arity(); ++i)
                if (a_mask >> i & 1) {
                    if (packed >> k & 1) s0 |= 1u << i;
                    ++k;
                }
            double direct = subdomain_marginal_masksum(spec, a_mask, s0);
            CHECK(std::abs(direct - by_restriction[packed]) <= 1e-10);
        }
    }
}

TEST_CASE("sub-domain sampler law (chi-square sanity)") {
    BitFunction f = zoo::majority(5);
    std::uint32_t a_mask = 0b01101;
    auto law = subdomain_marginal_by_restriction(f, a_mask);
    double total = 0;
    for (double v : law) total += v;
    Rng rng(2718);
    const int draws = 100000;
    std::map<std::uint32_t, int> count;
    for (int t = 0; t < draws; ++t) ++count[sample_spectral_subdomain(f, a_mask, rng)];
    int na = __builtin_popcount(a_mask);
    for (std::uint32_t packed = 0; packed < (1u << na); ++packed) {
        std::uint32_t s0 = 0;
        int k = 0;
        for (int i = 0; i < f.arity(); ++i)
            if (a_mask >> i & 1) {
                if (packed >> k & 1) s0 |= 1u << i;
                ++k;
            }
        double p = law[packed] / total;
        double expect = p * draws;
        double got = count.count(s0) ? count[s0] : 0;
        if (expect > 5) CHECK(std::abs(got - expect) <= 5 * std::sqrt(expect) + 5);
    }
}

TEST_CASE("spectral subset mass: two routes agree; closed forms") {
    for (const auto& f : small_zoo(10)) {
        if (f.arity() > 12) continue;
        SpectrumTable spec = walsh_transform(f);
        const std::uint32_t full = (1u << f.arity()) - 1;
        // A = [n] -> E[f^2]; A = empty -> E[f]^2
        CHECK(spectral_subset_mass(spec, full) == doctest::Approx(spec.total_mass()).epsilon(1e-12));
        CHECK(spectral_subset_mass(spec, 0) == doctest::Approx(spec[0] * spec[0]).epsilon(1e-12));
        Rng rng(f.arity());
        for (int t = 0; t < 5; ++t) {
            std::uint32_t a = static_cast<std::uint32_t>(rng.below(full + 1));
            CHECK(std::abs(spectral_subset_mass(spec, a) -
                           spectral_subset_mass_conditional(f, a)) <= 1e-10);
        }
    }
    // MAJ3, A = {1}: fhat(empty)^2 + fhat({1})^2 = 1/4
    CHECK(spectral_subset_mass(walsh_transform(zoo::majority(3)), 0b001) ==
          doctest::Approx(0.25));
}

TEST_CASE("pivotal and spectral marginals coincide; full laws differ for MAJ3") {
    for (const auto& f : small_zoo(12)) {
        MarginalReport rep = marginal_checks(f);
        CHECK(rep.max_abs_diff_1d <= 1e-10);
        CHECK(rep.max_abs_diff_2d <= 1e-10);
    }
    MarginalReport maj = marginal_checks(zoo::majority(3));
    CHECK(maj.pivotal_1d[0] == doctest::Approx(0.5));
    CHECK(maj.spectral_1d[0] == doctest::Approx(0.5));
    CHECK(maj.tv_distance_full_laws > 0.01);  // the two distributions are different
}

TEST_CASE("one-point coupling identity") {
    BitFunction f = zoo::majority(5);
    SUBCASE("W empty reduces to the marginal identity") {
        auto [lhs, rhs] = one_point_coupling_check(f, 2, 0);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
        MarginalReport rep = marginal_checks(f);
        CHECK(lhs == doctest::Approx(rep.pivotal_1d[2]).epsilon(1e-10));
    }
    SUBCASE("W = [n] minus x leaves only fhat({x})^2") {
        BitFunction g = zoo::majority(3);
        std::uint32_t w = 0b110;
        auto [lhs, rhs] = one_point_coupling_check(g, 0, w);
        SpectrumTable spec = walsh_transform(g);
        CHECK(lhs == doctest::Approx(spec[0b001] * spec[0b001]).epsilon(1e-10));
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
    SUBCASE("random monotone functions and windows") {
        Rng rng(555);
        for (int t = 0; t < 12; ++t) {
            // random OR of ANDs: monotone by construction
            const int n = 7;
            std::uint32_t c1 = static_cast<std::uint32_t>(rng.below(128)) | 1;
            std::uint32_t c2 = static_cast<std::uint32_t>(rng.below(128)) | 2;
            std::vector<double> tab(128);
            for (std::uint32_t m = 0; m < 128; ++m)
                tab[m] = ((m & c1) == c1 || (m & c2) == c2) ? 1.0 : -1.0;
            BitFunction g = BitFunction::from_table(n, Range::PM1, std::move(tab));
            int x = static_cast<int>(rng.below(n));
            std::uint32_t w = static_cast<std::uint32_t>(rng.below(128)) & ~(1u << x);
            auto [lhs, rhs] = one_point_coupling_check(g, x, w);
            CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
    }
    SUBCASE("non-monotone input is rejected for nonempty W") {
        BitFunction g = zoo::parity(4);
        CHECK_THROWS(one_point_coupling_check(g, 0, 0b0110));
    }
    CHECK_THROWS(one_point_coupling_check(f, 1, 0b00010));
}

TEST_CASE("hypercontractivity: never violated on random real functions") {
    Rng rng(404);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng.below(5));
        std::vector<double> tab(std::size_t(1) << n);
        for (double& v : tab) v = 2.0 * rng.next_double() - 1.0;
        BitFunction f = BitFunction::from_table(n, Range::Real, std::move(tab));
        for (double rho : {0.1, 0.5, 0.9}) {
            auto chk = check_hypercontractivity(f, rho);
            CHECK(chk.holds);
        }
    }
}

TEST_CASE("hypercontractivity endpoints") {
    BitFunction f = zoo::random_function(6, 99);
    auto at0 = check_hypercontractivity(f, 0.0);
    CHECK(at0.lhs == doctest::Approx(std::abs(expectation_at_p(f, 0.5))));
    CHECK(at0.rhs == doctest::Approx(lq_norm(f, 1.0)));
    CHECK(at0.holds);
    auto at1 = check_hypercontractivity(f, 1.0);
    CHECK(at1.lhs == doctest::Approx(at1.rhs).epsilon(1e-9));  // equality at rho = 1
}

TEST_CASE("scalar two-point inequality on a dense grid") {
    CHECK(check_scalar_bb(0.0, 0.7));
    CHECK(check_scalar_bb(5.0, 0.0));
    for (int yi = 0; yi <= 1000; ++yi)
        for (int ri = 0; ri <= 100; ri += 10) {
            double y = -10.0 + 20.0 * yi / 1000.0;
            double rho = ri / 100.0;
            CHECK(check_scalar_bb(y, rho));
        }
}

TEST_CASE("csv export shape") {
    std::ostringstream os;
    export_spectrum_csv(walsh_transform(zoo::majority(3)), os);
    std::string s = os.str();
    CHECK(s.substr(0, 24) == "mask,size,coefficient\n0,");
    int lines = 0;
    for (char c : s)
        if (c == '\n') ++lines;
    CHECK(lines == 9);
}
