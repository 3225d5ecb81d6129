#pragma once

// Points of the hypercube {-1,+1}^n and the product measures on them.
// Bits are stored packed, bit i set <=> x_i = +1. Arity is arbitrary;
// exact-table operations elsewhere enforce their own n <= 24 cap.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "noiselab/rng.hpp"

namespace noiselab {

struct ProductMeasure {
    double p = 0.5;
    explicit ProductMeasure(double prob = 0.5) : p(prob) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ProductMeasure: p outside [0,1]");
    }
};

class Configuration {
  public:
    Configuration() : n_(0) {}
    explicit Configuration(int n) : n_(n), w_((n + 63) / 64, 0) {
        if (n < 1) throw std::invalid_argument("Configuration: arity must be >= 1");
    }
    // from an exact-mode mask, n <= 64
    Configuration(int n, std::uint64_t mask) : Configuration(n) {
        if (n > 64) throw std::invalid_argument("Configuration: mask constructor needs n <= 64");
        w_[0] = mask & top_mask(n, 0);
    }

    int arity() const { return n_; }

    int bit(int i) const { return (w_[i >> 6] >> (i & 63)) & 1 ? +1 : -1; }
    bool is_plus(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set_plus(int i, bool plus) {
        std::uint64_t m = 1ULL << (i & 63);
        if (plus)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip_bit(int i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    std::uint64_t mask() const {
        if (n_ > 64) throw std::logic_error("Configuration: mask() needs n <= 64");
        return w_[0];
    }

    int popcount() const {
        int c = 0;
        for (std::uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

    bool operator==(const Configuration& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Configuration& o) const { return !(*this == o); }

    static std::uint64_t top_mask(int n, std::size_t word) {
        int lo = static_cast<int>(word) * 64;
        if (n - lo >= 64) return ~0ULL;
        if (n - lo <= 0) return 0;
        return (1ULL << (n - lo)) - 1;
    }

  private:
    int n_;
    std::vector<std::uint64_t> w_;
};

inline int hamming_distance(const Configuration& a, const Configuration& b) {
    int d = 0;
    for (std::size_t k = 0; k < a.words().size(); ++k)
        d += __builtin_popcountll(a.words()[k] ^ b.words()[k]);
    return d;
}

// Each bit independently +1 with probability measure.p.
inline Configuration sample_config(int n, const ProductMeasure& measure, Rng& rng) {
    Configuration c(n);
    if (measure.p == 0.5) {
        for (std::size_t k = 0; k < c.words().size(); ++k)
            c.words()[k] = rng.next_u64() & Configuration::top_mask(n, k);
        return c;
    }
    for (int i = 0; i < n; ++i) c.set_plus(i, rng.bernoulli(measure.p));
    return c;
}

// Each bit independently resampled (fair) with probability eps. Uniform
// marginal is preserved.
inline Configuration apply_noise(const Configuration& omega, double eps, Rng& rng) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("apply_noise: eps outside [0,1]");
    Configuration out = omega;
    if (eps == 0.0) return out;
    int n = omega.arity();
    for (int i = 0; i < n; ++i) {
        if (rng.bernoulli(eps)) out.set_plus(i, rng.next_u64() & 1);
    }
    return out;
}

// omega flipped in coordinate i.
inline Configuration flip(const Configuration& omega, int i) {
    if (i < 0 || i >= omega.arity()) throw std::out_of_range("flip: index out of range");
    Configuration out = omega;
    out.flip_bit(i);
    return out;
}

}  // namespace noiselab
