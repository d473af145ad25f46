#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "arena/cardset.hpp"
#include "arena/static_vector.hpp"

namespace arena {

inline constexpr int kDeckSize = 30;
inline constexpr int kStartingHp = 30;
inline constexpr int kMaxMana = 12;
inline constexpr std::size_t kHandCap = 8;
inline constexpr std::size_t kLaneCap = 3;
inline constexpr std::size_t kMaxLanes = 2;
inline constexpr int kTurnCap = 100;

using Deck = std::array<CardId, kDeckSize>;

enum class Outcome : std::uint8_t { WinP0, WinP1, Draw };

std::string_view to_string(Outcome outcome);

struct CreatureInstance {
    CardId source_card = 0;
    std::int16_t attack = 0;
    std::int16_t defense = 0;
    KeywordSet keywords;
    std::uint8_t lane = 0;
    bool can_attack = false;
    bool has_attacked = false;

    friend bool operator==(const CreatureInstance&, const CreatureInstance&) = default;
};

using Lane = StaticVector<CreatureInstance, kLaneCap>;

struct PlayerState {
    int hp = kStartingHp;
    int max_mana = 0;
    int mana = 0;
    /// Remaining deck; the next card drawn is deck.back().
    StaticVector<CardId, kDeckSize> deck;
    StaticVector<CardId, kHandCap> hand;
    std::array<Lane, kMaxLanes> lanes;
    int fatigue = 0;

    friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct GameState {
    std::array<PlayerState, 2> players;
    std::uint8_t active = 0;
    std::uint8_t lane_count = 2;
    int turn = 1;
    std::optional<Outcome> over;

    [[nodiscard]] PlayerState& me() noexcept { return players[active]; }
    [[nodiscard]] const PlayerState& me() const noexcept { return players[active]; }
    [[nodiscard]] PlayerState& enemy() noexcept { return players[1 - active]; }
    [[nodiscard]] const PlayerState& enemy() const noexcept { return players[1 - active]; }

    friend bool operator==(const GameState&, const GameState&) = default;
};

/// FNV-1a over every field of the state; used by game logs.
std::uint64_t state_hash(const GameState& state);

enum class ActionKind : std::uint8_t { Pass, Summon, UseItem, Attack };

/// A creature slot addressed by absolute owner index, or that owner's face.
struct Target {
    enum class Kind : std::uint8_t { None, Face, Creature };
    Kind kind = Kind::None;
    std::uint8_t owner = 0;
    std::uint8_t lane = 0;
    std::uint8_t slot = 0;

    static constexpr Target face(std::uint8_t owner) { return {Kind::Face, owner, 0, 0}; }
    static constexpr Target creature(std::uint8_t owner, std::uint8_t lane, std::uint8_t slot) {
        return {Kind::Creature, owner, lane, slot};
    }
    friend constexpr bool operator==(const Target&, const Target&) = default;
};

struct Action {
    ActionKind kind = ActionKind::Pass;
    CardId card = 0;          // Summon, UseItem
    std::uint8_t lane = 0;    // Summon lane, or attacker lane
    std::uint8_t slot = 0;    // attacker slot
    Target target;            // UseItem, Attack

    static constexpr Action pass() { return {}; }
    static constexpr Action summon(CardId card, std::uint8_t lane) { return {ActionKind::Summon, card, lane, 0, {}}; }
    static constexpr Action use_item(CardId card, Target target) { return {ActionKind::UseItem, card, 0, 0, target}; }
    static constexpr Action attack(std::uint8_t lane, std::uint8_t slot, Target target) {
        return {ActionKind::Attack, 0, lane, slot, target};
    }
    friend constexpr bool operator==(const Action&, const Action&) = default;
};

std::string describe(const Action& action);

// Upper bound: 8 distinct cards x 2 lanes, 8 items x 7 targets, 6 attackers x 4 targets, Pass.
inline constexpr std::size_t kMaxActions = 128;
using ActionList = StaticVector<Action, kMaxActions>;

class IllegalAction : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InvalidDeck : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Rules {
    std::uint8_t lanes = 2;
};

/// Game rules bound to a card universe. Stateless apart from the card set
/// reference; one Engine may serve any number of concurrent games.
class Engine {
public:
    explicit Engine(const CardSet& cards, Rules rules = {});

    [[nodiscard]] const CardSet& cards() const noexcept { return *cards_; }
    [[nodiscard]] const Rules& rules() const noexcept { return rules_; }

    [[nodiscard]] GameState new_game(const Deck& deck0, const Deck& deck1, std::uint64_t seed) const;

    /// Deterministic order: summons by (card, lane), items by (card, target),
    /// attacks by (attacker, target), then Pass.
    [[nodiscard]] ActionList legal_actions(const GameState& state) const;

    /// Throws IllegalAction if the action is not legal in `state`.
    void apply(GameState& state, const Action& action) const;
    [[nodiscard]] GameState applied(GameState state, const Action& action) const {
        apply(state, action);
        return state;
    }
    /// Applies without re-validating; action must come from legal_actions(state).
    void apply_unchecked(GameState& state, const Action& action) const;

private:
    void validate_deck(const Deck& deck) const;
    void draw(GameState& state, int player) const;
    void start_turn(GameState& state) const;
    void end_turn(GameState& state) const;
    void resolve_attack(GameState& state, const Action& action) const;
    void resolve_item(GameState& state, const Card& card, const Target& target) const;
    void play_effects(GameState& state, const Card& card) const;
    void remove_dead(GameState& state) const;
    void check_over(GameState& state) const;

    const CardSet* cards_;
    Rules rules_;
};

enum class AgentKind : std::uint8_t { Random, Greedy };

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent_kind(std::string_view text);

/// A playing strategy plus its own seed; the per-game action stream is
/// derived from (agent seed, game seed).
struct Agent {
    AgentKind kind = AgentKind::Random;
    std::uint64_t seed = 0;
};

/// Receives every (pre-action state, actor, action) triple of a simulated game.
class GameObserver {
public:
    virtual ~GameObserver() = default;
    virtual void on_action(const GameState& before, const Action& action) = 0;
};

/// Plays one full game. Pure function of its arguments.
Outcome simulate_game(const Engine& engine, const Deck& deck0, const Deck& deck1, const Agent& agent0,
                      const Agent& agent1, std::uint64_t seed, GameObserver* observer = nullptr);

}  // namespace arena
