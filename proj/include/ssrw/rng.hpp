// rng.hpp — seeded generators, per-task stream derivation and portable
// uniform draws. Every random quantity in the library flows through here so
// that results depend only on (seed, task index), never on the platform's
// <random> distribution implementations.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace ssrw {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for replication `index` of the stream tagged `tag` under `master`.
/// Tags keep unrelated experiments sharing a master seed decorrelated.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index) noexcept {
    return mix64(mix64(mix64(master) ^ tag) + index);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
    return Rng{derive_seed(master, tag, index)};
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1].
inline double uniform01_open_left(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0 (Lemire's nearly divisionless method).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Bernoulli(p) via a raw 64-bit threshold comparison.
class Bernoulli {
public:
    explicit Bernoulli(double p) : always_(p >= 1.0) {
        if (p <= 0.0) {
            threshold_ = 0;
        } else if (!always_) {
            threshold_ = static_cast<std::uint64_t>(std::ldexp(p, 64));
        }
    }
    bool operator()(Rng& rng) const { return always_ || rng() < threshold_; }

private:
    std::uint64_t threshold_ = 0;
    bool always_;
};

} // namespace ssrw
