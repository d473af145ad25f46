#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace arena {

using Rng = std::mt19937_64;

/// Stream tags. Every random decision in the library draws from a stream
/// keyed by (base seed, tag, indices...), so serial and parallel runs agree.
enum class Phase : std::uint64_t {
    Init = 1,
    Tournament = 2,
    Scoring = 3,
    Breeding = 4,
    Merge = 5,
    TrainDrafts = 6,
    EvalDrafts = 7,
    Evaluation = 8,
    Baseline = 9,
    Opponents = 10,
    Shuffle = 11,
    AgentStream = 12,
    CardGen = 13,
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix64(base);
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t base, Phase phase,
                                    std::initializer_list<std::uint64_t> parts = {}) noexcept {
    std::uint64_t h = mix64(base ^ (static_cast<std::uint64_t>(phase) * 0xD1B54A32D192ED03ULL));
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
    return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

/// Uniform integer in [0, bound). bound must be > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>{0, bound - 1}(rng);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>{0.0, 1.0}(rng); }

}  // namespace arena
