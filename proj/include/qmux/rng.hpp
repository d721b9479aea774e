// Counter-based random number generation (SplitMix64 mixing function).
//
// Streams are keyed, not stateful-global: stream_for(seed, index) derives an
// independent stream for any 64-bit index (one per pump pulse in the
// simulator), so pulses can be generated in any order or in parallel and the
// output is reproducible bit-for-bit from (seed, pulse_index) alone.
#pragma once

#include <cmath>
#include <cstdint>

namespace qmux {

namespace rng_detail {
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace rng_detail

class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    // independent stream for a (seed, stream index) pair
    static Rng stream_for(uint64_t seed, uint64_t index) {
        return Rng(rng_detail::mix64(seed ^ rng_detail::mix64(index + 0x1F123BB5159A55E5ULL)));
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    uint64_t uniform_below(uint64_t n) {
        // multiply-shift; bias is negligible for n << 2^64
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // standard normal via Box-Muller (no state cache: two uniforms per draw,
    // keeping the consumption pattern explicit and platform-independent)
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // Poisson by inversion-by-multiplication; fine for the mean-pair regimes
    // used here (mu well below ~30)
    int poisson(double mu) {
        if (mu <= 0.0) return 0;
        const double limit = std::exp(-mu);
        double prod = uniform();
        int n = 0;
        while (prod > limit) {
            prod *= uniform();
            ++n;
        }
        return n;
    }

  private:
    uint64_t state_;
};

}  // namespace qmux
