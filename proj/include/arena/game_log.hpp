#pragma once

#include <iosfwd>
#include <string>

#include "arena/engine.hpp"

namespace arena {

/// Writes one JSON object per line: a header (seed, decks), one record per
/// action (step, turn, actor, pre-action state hash, action) and a result line.
class JsonLinesGameLog final : public GameObserver {
public:
    JsonLinesGameLog(std::ostream& out, const Deck& deck0, const Deck& deck1, std::uint64_t seed, const Engine& engine);
    void on_action(const GameState& before, const Action& action) override;
    void finish(Outcome outcome);

private:
    std::ostream& out_;
    std::size_t step_ = 0;
};

struct ReplayReport {
    bool consistent = false;
    std::size_t steps = 0;
    std::string error;
    std::optional<Outcome> outcome;
};

/// Re-applies a logged game and checks every recorded state hash.
ReplayReport replay_game_log(const Engine& engine, std::istream& log);

}  // namespace arena
