#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pcorr {

// All randomness flows from one 64-bit root seed through named substreams.
// The generator is mt19937_64 (bit-exact across platforms by the standard);
// uniform doubles are produced by hand so no implementation-defined
// distribution machinery sneaks into reproducible outputs.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seed for a named substream (e.g. "alpha", "mc", "perturb") of a root seed.
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view name) {
    std::uint64_t s = root ^ fnv1a64(name);
    splitmix64(s);
    return splitmix64(s);
}

// Seed for block b of a substream (worker-count independent MC).
inline std::uint64_t block_seed(std::uint64_t stream, std::uint64_t block) {
    std::uint64_t s = stream ^ (0x2545f4914f6cdd1dULL * (block + 1));
    return splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform on [0,1) with 53 random bits
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace pcorr
