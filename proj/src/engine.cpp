#include "arena/engine.hpp"

#include <algorithm>
#include <sstream>

#include "arena/seeding.hpp"

namespace arena {

namespace {

void hash_bytes(std::uint64_t& h, std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) {
        h ^= (value >> (8 * i)) & 0xFF;
        h *= 0x100000001b3ULL;
    }
}

void hash_int(std::uint64_t& h, int value) { hash_bytes(h, static_cast<std::uint32_t>(value), 4); }

}  // namespace

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::WinP0: return "WinP0";
        case Outcome::WinP1: return "WinP1";
        case Outcome::Draw: return "Draw";
    }
    return "?";
}

std::uint64_t state_hash(const GameState& state) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& p : state.players) {
        hash_int(h, p.hp);
        hash_int(h, p.max_mana);
        hash_int(h, p.mana);
        hash_int(h, p.fatigue);
        hash_int(h, static_cast<int>(p.deck.size()));
        for (CardId c : p.deck) hash_bytes(h, c, 2);
        hash_int(h, static_cast<int>(p.hand.size()));
        for (CardId c : p.hand) hash_bytes(h, c, 2);
        for (const auto& lane : p.lanes) {
            hash_int(h, static_cast<int>(lane.size()));
            for (const auto& c : lane) {
                hash_bytes(h, c.source_card, 2);
                hash_int(h, c.attack);
                hash_int(h, c.defense);
                hash_bytes(h, c.keywords.bits(), 1);
                hash_bytes(h, c.lane, 1);
                hash_bytes(h, (c.can_attack ? 1u : 0u) | (c.has_attacked ? 2u : 0u), 1);
            }
        }
    }
    hash_bytes(h, state.active, 1);
    hash_bytes(h, state.lane_count, 1);
    hash_int(h, state.turn);
    hash_int(h, state.over ? static_cast<int>(*state.over) : -1);
    return h;
}

std::string describe(const Action& action) {
    std::ostringstream out;
    auto target = [&](const Target& t) {
        if (t.kind == Target::Kind::Face)
            out << "face(p" << int(t.owner) << ')';
        else
            out << "p" << int(t.owner) << ".lane" << int(t.lane) << '[' << int(t.slot) << ']';
    };
    switch (action.kind) {
        case ActionKind::Pass: out << "PASS"; break;
        case ActionKind::Summon: out << "SUMMON " << action.card << " lane" << int(action.lane); break;
        case ActionKind::UseItem:
            out << "USE " << action.card << ' ';
            target(action.target);
            break;
        case ActionKind::Attack:
            out << "ATTACK lane" << int(action.lane) << '[' << int(action.slot) << "] -> ";
            target(action.target);
            break;
    }
    return out.str();
}

Engine::Engine(const CardSet& cards, Rules rules) : cards_(&cards), rules_(rules) {
    if (rules_.lanes < 1 || rules_.lanes > kMaxLanes) throw std::invalid_argument("lanes must be 1 or 2");
}

void Engine::validate_deck(const Deck& deck) const {
    for (CardId id : deck)
        if (!cards_->contains(id)) throw InvalidDeck("deck contains unknown card id " + std::to_string(id));
}

GameState Engine::new_game(const Deck& deck0, const Deck& deck1, std::uint64_t seed) const {
    validate_deck(deck0);
    validate_deck(deck1);
    GameState state;
    state.lane_count = rules_.lanes;
    Rng rng(derive_seed(seed, Phase::Shuffle));
    const std::array<const Deck*, 2> decks{&deck0, &deck1};
    for (int p = 0; p < 2; ++p) {
        Deck shuffled = *decks[p];
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (CardId id : shuffled) state.players[p].deck.push_back(id);
    }
    for (int i = 0; i < 4; ++i) draw(state, 0);
    for (int i = 0; i < 5; ++i) draw(state, 1);
    state.active = 0;
    state.turn = 1;
    start_turn(state);
    return state;
}

void Engine::draw(GameState& state, int player) const {
    auto& p = state.players[player];
    if (p.deck.empty()) {
        ++p.fatigue;
        p.hp -= p.fatigue;
        return;
    }
    const CardId card = p.deck.back();
    p.deck.pop_back();
    if (!p.hand.full()) p.hand.push_back(card);  // a full hand burns the card
}

void Engine::start_turn(GameState& state) const {
    auto& me = state.me();
    me.max_mana = std::min(kMaxMana, me.max_mana + 1);
    me.mana = me.max_mana;
    for (auto& lane : me.lanes)
        for (auto& c : lane) {
            c.can_attack = true;
            c.has_attacked = false;
        }
    draw(state, state.active);
    check_over(state);
}

void Engine::end_turn(GameState& state) const {
    state.active = static_cast<std::uint8_t>(1 - state.active);
    if (state.active == 0) ++state.turn;
    if (state.turn > kTurnCap) {
        const int hp0 = state.players[0].hp, hp1 = state.players[1].hp;
        state.over = hp0 > hp1 ? Outcome::WinP0 : hp1 > hp0 ? Outcome::WinP1 : Outcome::Draw;
        return;
    }
    start_turn(state);
}

void Engine::check_over(GameState& state) const {
    if (state.over) return;
    const bool dead0 = state.players[0].hp <= 0, dead1 = state.players[1].hp <= 0;
    if (dead0 && dead1)
        state.over = Outcome::Draw;
    else if (dead0)
        state.over = Outcome::WinP1;
    else if (dead1)
        state.over = Outcome::WinP0;
}

ActionList Engine::legal_actions(const GameState& state) const {
    ActionList out;
    if (state.over) return out;
    const auto me_idx = state.active;
    const auto enemy_idx = static_cast<std::uint8_t>(1 - me_idx);
    const auto& me = state.me();
    const auto& enemy = state.enemy();

    // Distinct hand cards in ascending id order.
    StaticVector<CardId, kHandCap> ids;
    for (CardId id : me.hand) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());

    for (CardId id : ids) {
        const Card& card = cards_->at(id);
        if (!card.is_creature() || card.cost > me.mana) continue;
        for (std::uint8_t lane = 0; lane < state.lane_count; ++lane)
            if (me.lanes[lane].size() < kLaneCap) out.push_back(Action::summon(id, lane));
    }
    for (CardId id : ids) {
        const Card& card = cards_->at(id);
        if (card.is_creature() || card.cost > me.mana) continue;
        const bool friendly = card.kind == CardKind::GreenItem;
        const auto owner = friendly ? me_idx : enemy_idx;
        const auto& side = friendly ? me : enemy;
        for (std::uint8_t lane = 0; lane < state.lane_count; ++lane)
            for (std::uint8_t slot = 0; slot < side.lanes[lane].size(); ++slot)
                out.push_back(Action::use_item(id, Target::creature(owner, lane, slot)));
        if (card.kind == CardKind::BlueItem) out.push_back(Action::use_item(id, Target::face(enemy_idx)));
    }
    for (std::uint8_t lane = 0; lane < state.lane_count; ++lane) {
        const auto& mine = me.lanes[lane];
        const auto& theirs = enemy.lanes[lane];
        const bool guarded = std::any_of(theirs.begin(), theirs.end(),
                                         [](const CreatureInstance& c) { return c.keywords.has(Keyword::Guard); });
        for (std::uint8_t slot = 0; slot < mine.size(); ++slot) {
            if (!mine[slot].can_attack || mine[slot].has_attacked) continue;
            for (std::uint8_t t = 0; t < theirs.size(); ++t)
                if (!guarded || theirs[t].keywords.has(Keyword::Guard))
                    out.push_back(Action::attack(lane, slot, Target::creature(enemy_idx, lane, t)));
            if (!guarded) out.push_back(Action::attack(lane, slot, Target::face(enemy_idx)));
        }
    }
    out.push_back(Action::pass());
    return out;
}

void Engine::apply(GameState& state, const Action& action) const {
    if (state.over) throw IllegalAction("game is over");
    const auto legal = legal_actions(state);
    if (std::find(legal.begin(), legal.end(), action) == legal.end())
        throw IllegalAction("illegal action: " + describe(action));
    apply_unchecked(state, action);
}

void Engine::play_effects(GameState& state, const Card& card) const {
    state.me().hp += card.player_hp_delta;
    state.enemy().hp += card.opponent_hp_delta;
    for (int i = 0; i < card.card_draw; ++i) draw(state, state.active);
}

void Engine::resolve_item(GameState& state, const Card& card, const Target& target) const {
    if (target.kind == Target::Kind::Face) {
        state.players[target.owner].hp += std::min(0, card.defense);
        return;
    }
    auto& c = state.players[target.owner].lanes[target.lane][target.slot];
    c.attack = static_cast<std::int16_t>(std::max(0, c.attack + card.attack));
    c.defense = static_cast<std::int16_t>(c.defense + card.defense);
    if (card.kind == CardKind::GreenItem)
        c.keywords.add(card.keywords);
    else
        c.keywords.remove(card.keywords);
}

void Engine::resolve_attack(GameState& state, const Action& action) const {
    auto& me = state.me();
    auto& enemy = state.enemy();
    auto& attacker = me.lanes[action.lane][action.slot];
    attacker.has_attacked = true;
    const bool drain = attacker.keywords.has(Keyword::Drain);

    if (action.target.kind == Target::Kind::Face) {
        enemy.hp -= attacker.attack;
        if (drain) me.hp += attacker.attack;
        return;
    }

    auto& defender = enemy.lanes[action.target.lane][action.target.slot];
    const int to_defender = attacker.attack;
    const int to_attacker = defender.attack;
    const int defender_before = defender.defense;

    int dealt = 0;
    if (to_defender > 0) {
        if (defender.keywords.has(Keyword::Ward)) {
            defender.keywords.clear(Keyword::Ward);
        } else {
            dealt = to_defender;
            defender.defense = static_cast<std::int16_t>(defender.defense - to_defender);
            if (attacker.keywords.has(Keyword::Lethal)) defender.defense = std::min<std::int16_t>(defender.defense, 0);
        }
    }
    if (to_attacker > 0) {
        if (attacker.keywords.has(Keyword::Ward)) {
            attacker.keywords.clear(Keyword::Ward);
        } else {
            attacker.defense = static_cast<std::int16_t>(attacker.defense - to_attacker);
            if (defender.keywords.has(Keyword::Lethal)) attacker.defense = std::min<std::int16_t>(attacker.defense, 0);
        }
    }
    if (defender.defense <= 0 && attacker.keywords.has(Keyword::Breakthrough))
        enemy.hp -= std::max(0, to_defender - defender_before);
    if (drain) me.hp += dealt;
}

void Engine::remove_dead(GameState& state) const {
    for (auto& p : state.players)
        for (auto& lane : p.lanes)
            for (std::size_t i = lane.size(); i-- > 0;)
                if (lane[i].defense <= 0) lane.erase_at(i);
}

void Engine::apply_unchecked(GameState& state, const Action& action) const {
    auto& me = state.me();
    switch (action.kind) {
        case ActionKind::Pass:
            end_turn(state);
            return;
        case ActionKind::Summon: {
            const Card& card = cards_->at(action.card);
            me.hand.erase_at(static_cast<std::size_t>(std::find(me.hand.begin(), me.hand.end(), action.card) - me.hand.begin()));
            me.mana -= card.cost;
            CreatureInstance c;
            c.source_card = card.id;
            c.attack = static_cast<std::int16_t>(card.attack);
            c.defense = static_cast<std::int16_t>(card.defense);
            c.keywords = card.keywords;
            c.lane = action.lane;
            c.can_attack = card.keywords.has(Keyword::Charge);
            me.lanes[action.lane].push_back(c);
            play_effects(state, card);
            break;
        }
        case ActionKind::UseItem: {
            const Card& card = cards_->at(action.card);
            me.hand.erase_at(static_cast<std::size_t>(std::find(me.hand.begin(), me.hand.end(), action.card) - me.hand.begin()));
            me.mana -= card.cost;
            resolve_item(state, card, action.target);
            play_effects(state, card);
            break;
        }
        case ActionKind::Attack:
            resolve_attack(state, action);
            break;
    }
    remove_dead(state);
    check_over(state);
}

std::string_view to_string(AgentKind kind) { return kind == AgentKind::Random ? "random" : "greedy"; }

std::optional<AgentKind> parse_agent_kind(std::string_view text) {
    if (text == "random") return AgentKind::Random;
    if (text == "greedy") return AgentKind::Greedy;
    return std::nullopt;
}

}  // namespace arena
