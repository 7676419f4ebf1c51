#pragma once

#include <cstdint>
#include <random>

namespace rdg {

/// Seed for a generator run. Identical seed + identical inputs gives a
/// bit-identical output graph.
struct GenSeed {
    std::uint64_t value = 0;
};

namespace detail {
inline constexpr std::uint64_t kSeedGamma = 0x9E3779B97F4A7C15ull;
}

/// splitmix64 finalizer; bijective mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/// Stateless substream derivation. Streams for distinct (seed, tags...) are
/// independent for all practical purposes; used to key per-type-pair,
/// per-replicate and per-stage RNG streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return mix64(seed + detail::kSeedGamma * (a + 1));
}
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c) {
    return derive_seed(derive_seed(seed, a, b), c);
}

/// Substream tags. Each generation stage owns a tag so streams never collide.
enum StreamTag : std::uint64_t {
    kStreamTypes = 1,
    kStreamIrdArcs = 2,
    kStreamPair = 3,
    kStreamCciArcs = 4,
    kStreamReplicate = 5,
};

/// mt19937_64 wrapped with explicit conversions so output does not depend on
/// the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Unbiased uniform integer in [0, bound); bound >= 1. Lemire's
    /// multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace rdg
