#include "arena/agents.hpp"

#include <limits>

namespace arena {

namespace {

int board_sum(const PlayerState& p) {
    int total = 0;
    for (const auto& lane : p.lanes)
        for (const auto& c : lane) total += c.attack + c.defense;
    return total;
}

bool is_win_for(const GameState& state, int player) {
    return state.over && *state.over == (player == 0 ? Outcome::WinP0 : Outcome::WinP1);
}

}  // namespace

int material(const GameState& state, int player) {
    const auto& me = state.players[player];
    const auto& them = state.players[1 - player];
    return board_sum(me) - board_sum(them) + (me.hp - them.hp);
}

Action random_agent_choose(std::span<const Action> actions, Rng& rng) {
    return actions[uniform_index(rng, actions.size())];
}

Action greedy_agent_choose(const Engine& engine, const GameState& state, std::span<const Action> actions) {
    const int player = state.active;
    std::size_t best = 0;
    long best_value = std::numeric_limits<long>::min();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        GameState next = state;
        engine.apply_unchecked(next, actions[i]);
        const long value = is_win_for(next, player) ? std::numeric_limits<long>::max() : material(next, player);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    return actions[best];
}

Action choose_action(AgentKind kind, const Engine& engine, const GameState& state, std::span<const Action> actions,
                     Rng& rng) {
    return kind == AgentKind::Greedy ? greedy_agent_choose(engine, state, actions) : random_agent_choose(actions, rng);
}

Outcome simulate_game(const Engine& engine, const Deck& deck0, const Deck& deck1, const Agent& agent0,
                      const Agent& agent1, std::uint64_t seed, GameObserver* observer) {
    GameState state = engine.new_game(deck0, deck1, seed);
    std::array<Rng, 2> streams{Rng(derive_seed(agent0.seed, Phase::AgentStream, {seed, 0})),
                               Rng(derive_seed(agent1.seed, Phase::AgentStream, {seed, 1}))};
    const std::array<const Agent*, 2> agents{&agent0, &agent1};
    while (!state.over) {
        const auto actions = engine.legal_actions(state);
        const int p = state.active;
        const Action action = choose_action(agents[p]->kind, engine, state, actions.span(), streams[p]);
        if (observer) observer->on_action(state, action);
        engine.apply_unchecked(state, action);
    }
    return *state.over;
}

}  // namespace arena
