#pragma once

// Fourier-Walsh analysis on the hypercube: transform, energy spectrum,
// noise operator T_rho, exact and Monte Carlo noise correlations,
// spectral-sample machinery and hypercontractivity checks.
//
// Conventions: coefficients are stored densely, indexed by subset mask S;
// chi_S(omega) = prod_{i in S} x_i with bit i set <=> x_i = +1. All chapter-9
// identities (marginals, sub-domain law, coupling) assume PM1 range, where
// the spectral measure Qhat(S) = fhat(S)^2 is a probability measure.

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "noiselab/bitfunction.hpp"
#include "noiselab/estimate.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

struct SpectrumTable {
    int n = 0;
    Range provenance = Range::PM1;
    std::vector<double> coeff;  // 2^n entries, coeff[S] = fhat(S)

    double operator[](std::uint32_t s) const { return coeff[s]; }
    std::size_t size() const { return coeff.size(); }

    // total squared mass = E[f^2] by Parseval
    double total_mass() const;
};

// Raw in-place butterfly: replaces t by its unnormalized Walsh-Hadamard
// transform. Applying it twice multiplies by 2^n.
void fwht_inplace(std::vector<double>& t);

// fhat(S) for every S, computed in O(n 2^n). Requires table backing (or a
// materializable oracle with n <= 24).
SpectrumTable walsh_transform(const BitFunction& f);

// Level sums E_f(m) = sum_{|S|=m} fhat(S)^2, m = 0..n.
std::vector<double> energy_spectrum(const SpectrumTable& spec);

// T_rho: multiplies fhat(S) by rho^|S|.
SpectrumTable noise_operator(const SpectrumTable& spec, double rho);

// Pointwise values of T_rho f by direct averaging definition, as a function
// table (test oracle for the coefficient route).
std::vector<double> noise_operator_direct_mc(const BitFunction& f, double rho,
                                             std::uint64_t trials_per_point, std::uint64_t seed);

// E[f(omega) f(omega_eps)] = sum_S fhat(S)^2 (1-eps)^{|S|}.
double correlation_exact(const SpectrumTable& spec, double eps);

Estimate correlation_mc(const BitFunction& f, double eps, std::uint64_t trials,
                        std::uint64_t seed);

// S_f(eps) = P(f(omega) != f(omega_eps)) = (E[f^2] - corr(eps)) / 2; PM1 only.
double stability_gap(const SpectrumTable& spec, double eps);
Estimate stability_gap_mc(const BitFunction& f, double eps, std::uint64_t trials,
                          std::uint64_t seed);

// --- spectral sample -------------------------------------------------------

// Draws S with probability fhat(S)^2 / E[f^2] by inverse CDF over the mask
// order (O(2^n) prep, O(n) per draw).
class SpectralSampler {
  public:
    explicit SpectralSampler(const SpectrumTable& spec);
    std::uint32_t sample(Rng& rng) const;
    double total_mass() const { return total_; }

  private:
    std::vector<double> prefix_;
    double total_;
};

std::uint32_t sample_spectral(const SpectrumTable& spec, Rng& rng);

// Sub-domain sampling: draw y uniform on A^c, restrict f to A with outside
// bits frozen at y, and sample from the restricted spectral measure. The
// resulting law is Qhat(S_f cap A = .) normalized; PM1 only.
std::uint32_t sample_spectral_subdomain(const BitFunction& f, std::uint32_t a_mask, Rng& rng);

// Qhat(S_f cap A = s0) by both routes: marginalization over S' subset A^c,
// and averaging ghat_y(s0)^2 over all y on A^c. Exact; n <= 24 total.
double subdomain_marginal_masksum(const SpectrumTable& spec, std::uint32_t a_mask,
                                  std::uint32_t s0);
std::vector<double> subdomain_marginal_by_restriction(const BitFunction& f,
                                                      std::uint32_t a_mask);

// Qhat(S_f subset A), two independent routes: sum of fhat(S)^2 over S subset A,
// and E[|E(f|A)|^2].
double spectral_subset_mass(const SpectrumTable& spec, std::uint32_t a_mask);
double spectral_subset_mass_conditional(const BitFunction& f, std::uint32_t a_mask);

// --- pivotal/spectral marginal identities ----------------------------------

struct MarginalReport {
    int n = 0;
    std::vector<double> pivotal_1d;      // P(i in P)
    std::vector<double> spectral_1d;     // Qhat(i in S)
    std::vector<double> pivotal_2d;      // P(i,j in P), packed i<j
    std::vector<double> spectral_2d;     // Qhat(i,j in S), packed i<j
    double max_abs_diff_1d = 0.0;
    double max_abs_diff_2d = 0.0;
    double tv_distance_full_laws = 0.0;  // d_TV(law of P, law of S)
};

// Exact verification of the 1- and 2-dimensional marginal equalities between
// the pivotal set and the spectral sample; PM1 exact mode.
MarginalReport marginal_checks(const BitFunction& f);

// One-point function under the W-coupling: lhs = Qhat[x in S, S cap W = empty]
// by mask sum; rhs = P(x pivotal for omega1 AND omega2) where omega1 = omega2
// on W^c and the two are independent on W. Exact enumeration; requires x
// not in W.
std::pair<double, double> one_point_coupling_check(const BitFunction& f, int x,
                                                   std::uint32_t w_mask);

// --- hypercontractivity -----------------------------------------------------

struct HypercontractivityCheck {
    double lhs = 0.0;  // ||T_rho f||_2
    double rhs = 0.0;  // ||f||_{1+rho^2}
    bool holds = false;
};

// L_q norm under uniform measure, computed by exact averaging over 2^n points.
double lq_norm(const BitFunction& f, double q);

HypercontractivityCheck check_hypercontractivity(const BitFunction& f, double rho);

// Scalar two-point inequality behind the n = 1 case:
// (1 + rho^2 y^2)^{(1+rho^2)/2} <= (|1+y|^{1+rho^2} + |1-y|^{1+rho^2}) / 2.
bool check_scalar_bb(double y, double rho, double slack = 1e-12);

// CSV export: mask,size,coefficient; n <= 16.
void export_spectrum_csv(const SpectrumTable& spec, std::ostream& os);

}  // namespace noiselab
