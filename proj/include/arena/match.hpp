#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "arena/engine.hpp"

namespace arena {

/// Number of simulated games; the budget currency of every trainer.
class CostCounter {
public:
    void add(std::uint64_t games) noexcept { games_.fetch_add(games, std::memory_order_relaxed); }
    [[nodiscard]] std::uint64_t games() const noexcept { return games_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> games_{0};
};

/// Scores in half-wins: a win is 2, a draw 1 to each side.
inline constexpr std::int64_t kWinHalves = 2;

/// `games` games between deck_a and deck_b, sides alternating (deck_a is
/// player 0 in even games). Game k is seeded by derive_seed(seed, {k}).
struct Pairing {
    const Deck* deck_a = nullptr;
    const Deck* deck_b = nullptr;
    int games = 0;
    std::uint64_t seed = 0;
};

struct PairingScore {
    std::int64_t a = 0;  // half-wins
    std::int64_t b = 0;
};

/// Plays batches of games for one agent kind. Results are written to
/// per-game slots and reduced in pairing order, so any thread count gives
/// identical scores.
class Simulator {
public:
    Simulator(const Engine& engine, AgentKind player, CostCounter& cost, unsigned threads = 1);

    [[nodiscard]] const Engine& engine() const noexcept { return *engine_; }
    [[nodiscard]] AgentKind player() const noexcept { return player_; }
    [[nodiscard]] CostCounter& cost() const noexcept { return *cost_; }
    [[nodiscard]] unsigned threads() const noexcept { return threads_; }

    /// One game; counts toward the cost.
    Outcome play(const Deck& deck0, const Deck& deck1, std::uint64_t seed) const;

    std::vector<PairingScore> play(std::span<const Pairing> pairings) const;

private:
    const Engine* engine_;
    AgentKind player_;
    CostCounter* cost_;
    unsigned threads_;
};

}  // namespace arena
