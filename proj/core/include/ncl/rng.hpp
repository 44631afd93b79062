#pragma once

#include <cstdint>
#include <span>

namespace ncl {

// splitmix64 step. Public-domain constants (Steele et al.); chosen because
// the output is bit-exact on every platform, unlike the distributions in
// <random>.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Splittable-stream contract: a sub-stream for (seed, index) is the
// splitmix64 sequence seeded with mix(seed, index). Merged results are
// therefore independent of how work is divided among workers.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    // one scrambling round so that nearby indices decorrelate
    return splitmix64_next(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // index into a probability vector; walks the cdf once
    int categorical(std::span<const double> probs) {
        const double u = uniform();
        double cum = 0.0;
        int last_positive = 0;
        for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
            if (probs[i] <= 0.0) continue;
            cum += probs[i];
            last_positive = i;
            if (u < cum) return i;
        }
        return last_positive; // u fell inside rounding slack at the top
    }

  private:
    std::uint64_t state_;
};

} // namespace ncl
