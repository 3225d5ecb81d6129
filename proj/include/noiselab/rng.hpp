#pragma once

// Counter-based splittable RNG. A stream is (key, counter); output is a
// strong 64-bit mix of key+counter, so any (seed, stream-index, draw-index)
// triple maps to a fixed value and replays are bit-exact. split(i) derives
// an independent stream, safe to hand to worker i.

#include <cmath>
#include <cstdint>

namespace noiselab {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}
}  // namespace detail

class Rng {
  public:
    explicit Rng(std::uint64_t seed)
        : key_(detail::mix64(seed ^ 0x9e3779b97f4a7c15ULL)), ctr_(0) {}

    // Independent stream derived from this one; deterministic in (key, idx).
    Rng split(std::uint64_t idx) const {
        Rng r(0);
        r.key_ = detail::mix64(key_ + 0x632be59bd9b4e019ULL * (idx + 1));
        r.ctr_ = 0;
        return r;
    }

    std::uint64_t next_u64() {
        return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * ++ctr_);
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // fair +-1 bit
    int next_sign() { return (next_u64() & 1) ? 1 : -1; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // 128-bit multiply rejection-free bound is overkill here; modulo bias
        // is < 2^-40 for desk-scale n, but keep it exact anyway.
        std::uint64_t threshold = (-n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double exponential(double rate = 1.0) {
        double u;
        do {
            u = next_double();
        } while (u <= 0.0);
        return -std::log1p(-u) / rate;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace noiselab
