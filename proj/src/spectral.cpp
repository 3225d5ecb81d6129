#include "noiselab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace noiselab {

double SpectrumTable::total_mass() const {
    double s = 0.0;
    for (double c : coeff) s += c * c;
    return s;
}

void fwht_inplace(std::vector<double>& t) {
    const std::size_t n = t.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t blk = 0; blk < n; blk += len << 1) {
            for (std::size_t i = blk; i < blk + len; ++i) {
                double u = t[i], v = t[i + len];
                t[i] = u + v;
                t[i + len] = u - v;
            }
        }
    }
}

SpectrumTable walsh_transform(const BitFunction& f) {
    const BitFunction g = f.exact() ? f : f.materialize();
    SpectrumTable spec;
    spec.n = g.arity();
    spec.provenance = g.range();
    spec.coeff = g.table();
    fwht_inplace(spec.coeff);
    // raw butterfly uses sign (-1)^{|S cap m|}; chi_S needs (-1)^{|S \ m|}
    const double inv = 1.0 / static_cast<double>(spec.coeff.size());
    for (std::uint32_t s = 0; s < spec.coeff.size(); ++s) {
        double scale = (__builtin_popcount(s) & 1) ? -inv : inv;
        spec.coeff[s] *= scale;
    }
    return spec;
}

std::vector<double> energy_spectrum(const SpectrumTable& spec) {
    std::vector<double> e(spec.n + 1, 0.0);
    for (std::uint32_t s = 0; s < spec.coeff.size(); ++s)
        e[__builtin_popcount(s)] += spec.coeff[s] * spec.coeff[s];
    return e;
}

SpectrumTable noise_operator(const SpectrumTable& spec, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("noise_operator: rho outside [0,1]");
    SpectrumTable out = spec;
    std::vector<double> pw(spec.n + 1);
    pw[0] = 1.0;
    for (int k = 1; k <= spec.n; ++k) pw[k] = pw[k - 1] * rho;
    if (rho == 0.0) {
        for (int k = 1; k <= spec.n; ++k) pw[k] = 0.0;  // 0^0 = 1 only at level 0
    }
    for (std::uint32_t s = 0; s < out.coeff.size(); ++s)
        out.coeff[s] *= pw[__builtin_popcount(s)];
    return out;
}

std::vector<double> noise_operator_direct_mc(const BitFunction& f, double rho,
                                             std::uint64_t trials_per_point, std::uint64_t seed) {
    const int n = f.arity();
    std::vector<double> out(std::size_t(1) << n, 0.0);
    Rng root(seed);
    const double eps = 1.0 - rho;
    for (std::uint32_t m = 0; m < out.size(); ++m) {
        Rng rng = root.split(m);
        Configuration w(n, m);
        double s = 0.0;
        for (std::uint64_t t = 0; t < trials_per_point; ++t)
            s += f(apply_noise(w, eps, rng));
        out[m] = s / static_cast<double>(trials_per_point);
    }
    return out;
}

double correlation_exact(const SpectrumTable& spec, double eps) {
    std::vector<double> pw(spec.n + 1);
    pw[0] = 1.0;
    for (int k = 1; k <= spec.n; ++k) pw[k] = pw[k - 1] * (1.0 - eps);
    double s = 0.0;
    for (std::uint32_t m = 0; m < spec.coeff.size(); ++m)
        s += spec.coeff[m] * spec.coeff[m] * pw[__builtin_popcount(m)];
    return s;
}

Estimate correlation_mc(const BitFunction& f, double eps, std::uint64_t trials,
                        std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("correlation_mc: trials must be >= 1");
    Rng rng(seed);
    ProductMeasure half(0.5);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Configuration w = sample_config(f.arity(), half, rng);
        Configuration we = apply_noise(w, eps, rng);
        double v = f(w) * f(we);
        sum += v;
        sumsq += v * v;
    }
    return mean_estimate(sum, sumsq, trials, seed);
}

double stability_gap(const SpectrumTable& spec, double eps) {
    if (spec.provenance != Range::PM1)
        throw std::invalid_argument("stability_gap: PM1 range required (convert first)");
    return (spec.total_mass() - correlation_exact(spec, eps)) / 2.0;
}

Estimate stability_gap_mc(const BitFunction& f, double eps, std::uint64_t trials,
                          std::uint64_t seed) {
    if (f.range() != Range::PM1)
        throw std::invalid_argument("stability_gap_mc: PM1 range required (convert first)");
    Rng rng(seed);
    ProductMeasure half(0.5);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Configuration w = sample_config(f.arity(), half, rng);
        Configuration we = apply_noise(w, eps, rng);
        if (f(w) != f(we)) ++hits;
    }
    return binomial_estimate(hits, trials, seed);
}

SpectralSampler::SpectralSampler(const SpectrumTable& spec) {
    prefix_.resize(spec.coeff.size() + 1);
    prefix_[0] = 0.0;
    for (std::size_t s = 0; s < spec.coeff.size(); ++s)
        prefix_[s + 1] = prefix_[s] + spec.coeff[s] * spec.coeff[s];
    total_ = prefix_.back();
    if (!(total_ > 0.0))
        throw std::domain_error("SpectralSampler: empty spectrum (f identically 0), no draw");
}

std::uint32_t SpectralSampler::sample(Rng& rng) const {
    double u = rng.next_double() * total_;
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - prefix_.begin());
    if (idx > 0) --idx;
    if (idx >= prefix_.size() - 1) idx = prefix_.size() - 2;
    return static_cast<std::uint32_t>(idx);
}

std::uint32_t sample_spectral(const SpectrumTable& spec, Rng& rng) {
    return SpectralSampler(spec).sample(rng);
}

namespace {

// Restrict f to the bits of A, with the A^c bits frozen to the pattern given
// by y_bits (a full-width mask; only its A^c positions are read). Returns the
// table of the restricted function, indexed by packed A-bits.
std::vector<double> restrict_table(const BitFunction& f, std::uint32_t a_mask,
                                   std::uint32_t y_bits) {
    const int n = f.arity();
    std::vector<int> a_pos;
    for (int i = 0; i < n; ++i)
        if (a_mask >> i & 1) a_pos.push_back(i);
    std::vector<double> t(std::size_t(1) << a_pos.size());
    const std::uint32_t base = y_bits & ~a_mask;
    for (std::uint32_t p = 0; p < t.size(); ++p) {
        std::uint32_t m = base;
        for (std::size_t k = 0; k < a_pos.size(); ++k)
            if (p >> k & 1) m |= 1u << a_pos[k];
        t[p] = f.at(m);
    }
    return t;
}

std::uint32_t unpack_mask(std::uint32_t packed, std::uint32_t a_mask) {
    std::uint32_t out = 0;
    int k = 0;
    for (int i = 0; i < 32; ++i) {
        if (a_mask >> i & 1) {
            if (packed >> k & 1) out |= 1u << i;
            ++k;
        }
    }
    return out;
}

}  // namespace

std::uint32_t sample_spectral_subdomain(const BitFunction& f, std::uint32_t a_mask, Rng& rng) {
    if (f.range() != Range::PM1)
        throw std::invalid_argument("sample_spectral_subdomain: PM1 range required");
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    std::uint32_t y = static_cast<std::uint32_t>(rng.next_u64()) & ~a_mask &
                      ((n == 32) ? ~0u : ((1u << n) - 1));
    std::vector<double> t = restrict_table(g, a_mask, y);
    fwht_inplace(t);
    const double inv = 1.0 / static_cast<double>(t.size());
    double total = 0.0;
    for (double& c : t) {
        c *= inv;  // sign does not matter, only squares are used
        total += c * c;
    }
    if (!(total > 0.0))
        throw std::domain_error("sample_spectral_subdomain: restricted spectrum is empty");
    double u = rng.next_double() * total;
    double acc = 0.0;
    std::uint32_t pick = 0;
    for (std::uint32_t s = 0; s < t.size(); ++s) {
        acc += t[s] * t[s];
        if (u < acc) {
            pick = s;
            break;
        }
    }
    return unpack_mask(pick, a_mask);
}

double subdomain_marginal_masksum(const SpectrumTable& spec, std::uint32_t a_mask,
                                  std::uint32_t s0) {
    const std::uint32_t full = static_cast<std::uint32_t>(spec.coeff.size() - 1);
    const std::uint32_t ac = full & ~a_mask;
    double sum = 0.0;
    // iterate S' over subsets of A^c
    std::uint32_t sp = 0;
    for (;;) {
        double c = spec.coeff[s0 | sp];
        sum += c * c;
        if (sp == ac) break;
        sp = (sp - ac) & ac;  // next subset of ac
    }
    return sum;
}

std::vector<double> subdomain_marginal_by_restriction(const BitFunction& f,
                                                      std::uint32_t a_mask) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    const std::uint32_t ac = full & ~a_mask;
    int na = __builtin_popcount(a_mask);
    std::vector<double> acc(std::size_t(1) << na, 0.0);
    // average ghat_y(s)^2 over all y on A^c
    std::uint32_t y = 0;
    std::uint64_t count = 0;
    for (;;) {
        std::vector<double> t = restrict_table(g, a_mask, y);
        fwht_inplace(t);
        const double inv = 1.0 / static_cast<double>(t.size());
        for (std::size_t s = 0; s < t.size(); ++s) {
            double c = t[s] * inv;
            acc[s] += c * c;
        }
        ++count;
        if (y == ac) break;
        y = (y - ac) & ac;
    }
    for (double& v : acc) v /= static_cast<double>(count);
    return acc;  // indexed by packed A-bits
}

double spectral_subset_mass(const SpectrumTable& spec, std::uint32_t a_mask) {
    double sum = 0.0;
    std::uint32_t s = 0;
    for (;;) {
        double c = spec.coeff[s];
        sum += c * c;
        if (s == a_mask) break;
        s = (s - a_mask) & a_mask;
    }
    return sum;
}

double spectral_subset_mass_conditional(const BitFunction& f, std::uint32_t a_mask) {
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    const std::uint32_t ac = full & ~a_mask;
    // E(f|A) for each assignment of A bits, then average of squares
    double total = 0.0;
    std::uint32_t a = 0;
    std::uint64_t na_count = 0;
    for (;;) {
        double cond = 0.0;
        std::uint64_t nc = 0;
        std::uint32_t y = 0;
        for (;;) {
            cond += g.at(a | y);
            ++nc;
            if (y == ac) break;
            y = (y - ac) & ac;
        }
        cond /= static_cast<double>(nc);
        total += cond * cond;
        ++na_count;
        if (a == a_mask) break;
        a = (a - a_mask) & a_mask;
    }
    return total / static_cast<double>(na_count);
}

MarginalReport marginal_checks(const BitFunction& f) {
    if (f.range() != Range::PM1)
        throw std::invalid_argument("marginal_checks: PM1 range required");
    const BitFunction g = f.exact() ? f : f.materialize();
    const int n = g.arity();
    const std::size_t size = g.table_size();
    SpectrumTable spec = walsh_transform(g);

    MarginalReport rep;
    rep.n = n;
    rep.pivotal_1d.assign(n, 0.0);
    rep.spectral_1d.assign(n, 0.0);
    rep.pivotal_2d.assign(std::size_t(n) * n, 0.0);
    rep.spectral_2d.assign(std::size_t(n) * n, 0.0);

    // law of the pivotal set
    std::vector<double> law_p(size, 0.0);
    const double w = 1.0 / static_cast<double>(size);
    for (std::uint32_t m = 0; m < size; ++m) {
        std::uint32_t piv = 0;
        double fv = g.at(m);
        for (int i = 0; i < n; ++i)
            if (g.at(m ^ (1u << i)) != fv) piv |= 1u << i;
        law_p[piv] += w;
        for (int i = 0; i < n; ++i) {
            if (!(piv >> i & 1)) continue;
            rep.pivotal_1d[i] += w;
            for (int j = i + 1; j < n; ++j)
                if (piv >> j & 1) rep.pivotal_2d[std::size_t(i) * n + j] += w;
        }
    }

    double tv = 0.0;
    for (std::uint32_t s = 0; s < size; ++s) {
        double q = spec.coeff[s] * spec.coeff[s];
        for (int i = 0; i < n; ++i) {
            if (!(s >> i & 1)) continue;
            rep.spectral_1d[i] += q;
            for (int j = i + 1; j < n; ++j)
                if (s >> j & 1) rep.spectral_2d[std::size_t(i) * n + j] += q;
        }
        tv += std::abs(q - law_p[s]);
    }
    rep.tv_distance_full_laws = tv / 2.0;

    for (int i = 0; i < n; ++i)
        rep.max_abs_diff_1d =
            std::max(rep.max_abs_diff_1d, std::abs(rep.pivotal_1d[i] - rep.spectral_1d[i]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::size_t k = std::size_t(i) * n + j;
            rep.max_abs_diff_2d =
                std::max(rep.max_abs_diff_2d, std::abs(rep.pivotal_2d[k] - rep.spectral_2d[k]));
        }
    return rep;
}

std::pair<double, double> one_point_coupling_check(const BitFunction& f, int x,
                                                   std::uint32_t w_mask) {
    if (f.range() != Range::PM1)
        throw std::invalid_argument("one_point_coupling_check: PM1 range required");
    if (w_mask >> x & 1) throw std::invalid_argument("one_point_coupling_check: x must not lie in W");
    const BitFunction g = f.exact() ? f : f.materialize();
    // The plain-pivotality form of the identity needs sign(grad_x f) to be a
    // function of the shared bit x, i.e. f monotone. (The two copies share x.)
    if (w_mask != 0) {
        for (std::uint32_t m = 0; m < g.table_size(); ++m)
            for (int i = 0; i < g.arity(); ++i) {
                if (m & (1u << i)) continue;
                if (g.at(m) > g.at(m | (1u << i)))
                    throw std::invalid_argument("one_point_coupling_check: f must be monotone");
            }
    }
    const int n = g.arity();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    const std::uint32_t xbit = 1u << x;

    SpectrumTable spec = walsh_transform(g);
    double lhs = 0.0;
    for (std::uint32_t s = 0; s < spec.coeff.size(); ++s)
        if ((s & xbit) && !(s & w_mask)) lhs += spec.coeff[s] * spec.coeff[s];

    // coupling: shared bits on W^c, two independent copies on W
    const std::uint32_t wc = full & ~w_mask;
    double hits = 0.0;
    std::uint64_t total = 0;
    std::uint32_t shared = 0;
    for (;;) {
        std::uint32_t w1 = 0;
        for (;;) {
            std::uint32_t m1 = shared | w1;
            bool piv1 = g.at(m1) != g.at(m1 ^ xbit);
            if (piv1) {
                std::uint32_t w2 = 0;
                for (;;) {
                    std::uint32_t m2 = shared | w2;
                    if (g.at(m2) != g.at(m2 ^ xbit)) hits += 1.0;
                    if (w2 == w_mask) break;
                    w2 = (w2 - w_mask) & w_mask;
                }
            }
            total += std::size_t(1) << __builtin_popcount(w_mask);
            if (w1 == w_mask) break;
            w1 = (w1 - w_mask) & w_mask;
        }
        if (shared == wc) break;
        shared = (shared - wc) & wc;
    }
    double rhs = hits / static_cast<double>(total);
    return {lhs, rhs};
}

double lq_norm(const BitFunction& f, double q) {
    const BitFunction g = f.exact() ? f : f.materialize();
    double s = 0.0;
    for (double v : g.table()) s += std::pow(std::abs(v), q);
    s /= static_cast<double>(g.table_size());
    return std::pow(s, 1.0 / q);
}

HypercontractivityCheck check_hypercontractivity(const BitFunction& f, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("check_hypercontractivity: rho outside [0,1]");
    HypercontractivityCheck out;
    SpectrumTable spec = walsh_transform(f);
    double s = 0.0;
    for (std::uint32_t m = 0; m < spec.coeff.size(); ++m) {
        int k = __builtin_popcount(m);
        double scale = (rho == 0.0) ? (k == 0 ? 1.0 : 0.0) : std::pow(rho, k);
        double c = spec.coeff[m] * scale;
        s += c * c;
    }
    out.lhs = std::sqrt(s);
    out.rhs = lq_norm(f, 1.0 + rho * rho);
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

bool check_scalar_bb(double y, double rho, double slack) {
    double e = 1.0 + rho * rho;
    double lhs = std::pow(1.0 + rho * rho * y * y, e / 2.0);
    double rhs = (std::pow(std::abs(1.0 + y), e) + std::pow(std::abs(1.0 - y), e)) / 2.0;
    return lhs <= rhs + slack;
}

void export_spectrum_csv(const SpectrumTable& spec, std::ostream& os) {
    if (spec.n > 16) throw std::invalid_argument("export_spectrum_csv: n <= 16");
    os << "mask,size,coefficient\n";
    char buf[64];
    for (std::uint32_t s = 0; s < spec.coeff.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%u,%d,%.17g\n", s, __builtin_popcount(s), spec.coeff[s]);
        os << buf;
    }
}

}  // namespace noiselab
