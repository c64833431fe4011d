// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace ucclab {

/// Portable 64-bit generator (splitmix64). Every stochastic choice in the
/// library flows through this generator so that seeds reproduce bit-exactly
/// across platforms and across reimplementations: state advances by the
/// golden-ratio increment and the output is the standard two-round mix.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). Modulo reduction; the bias is
    /// irrelevant here, a fixed documented rule is what matters.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

/// Derive an independent substream seed from (seed, index). Substream i is
/// seeded with seed XOR splitmix64-output(i+1) so that members, restarts and
/// blocks never share a stream.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(index + 1);
    return seed ^ mixer.next();
}

/// In-place Fisher-Yates shuffle driven by SplitMix64 (descending sweep,
/// j = next() % (i+1)).
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace ucclab
