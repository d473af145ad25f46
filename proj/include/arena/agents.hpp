#pragma once

#include <span>

#include "arena/engine.hpp"
#include "arena/seeding.hpp"

namespace arena {

/// Board stat sum difference plus hp difference, from `player`'s side.
int material(const GameState& state, int player);

/// Uniform over the whole list, Pass included.
Action random_agent_choose(std::span<const Action> actions, Rng& rng);

/// One-step lookahead on material. Immediate wins score above everything;
/// ties keep the earliest action in enumeration order.
Action greedy_agent_choose(const Engine& engine, const GameState& state, std::span<const Action> actions);

Action choose_action(AgentKind kind, const Engine& engine, const GameState& state, std::span<const Action> actions,
                     Rng& rng);

}  // namespace arena
