#pragma once

#include <cstdint>

namespace starq {

/// SplitMix64 generator. Used for every sampled mode in the library so that
/// results are reproducible across platforms and thread counts; the standard
/// library distributions are not pinned down by the C++ standard, this is.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n) via 128-bit multiply (bias is negligible for n << 2^64
    /// and the mapping is deterministic, which is what matters here).
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    uint64_t state_;
};

/// Derives an independent stream for (seed, index); used to give every
/// Monte Carlo trial / sample its own generator so parallel order is irrelevant.
inline SplitMix64 derived_rng(uint64_t seed, uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    mixer.next();
    return mixer;
}

} // namespace starq
