#pragma once

#include <string>

#include "arena/cardset.hpp"
#include "arena/engine.hpp"

namespace arena::testing {

/// Small hand-written universe used by the engine and agent tests.
///   1 vanilla 2/2        2 1/1 Lethal      3 4/4 Ward       4 5/5 Breakthrough
///   5 2/1 vanilla        6 3/2 vanilla     7 1/1 vanilla    8 5/5 Guard
///   9 2/2 Drain         10 2/1 Charge     11 green +1/+1 Ward  12 red -2/-2 removes all
///  13 blue -3 face/creature  14 2/2 Guard  15 1-cost 1/1 draws 1
///  16 blue -2 to the target and -2 to its own player
inline const char* kTinyCards = R"(# test universe
1;Bear;creature;2;2;2;------;0;0;0
2;Asp;creature;1;1;1;----L-;0;0;0
3;Shell;creature;4;4;4;-----W;0;0;0
4;Rhino;creature;5;5;5;B-----;0;0;0
5;Rat;creature;1;2;1;------;0;0;0
6;Wolf;creature;3;3;2;------;0;0;0
7;Wisp;creature;1;1;1;------;0;0;0
8;Wall;creature;5;5;5;---G--;0;0;0
9;Leech;creature;2;2;2;--D---;0;0;0
10;Dart;creature;1;2;1;-C----;0;0;0
11;Charm;itemGreen;1;1;1;-----W;0;0;0
12;Hex;itemRed;2;-2;-2;BCDGLW;0;0;0
13;Bolt;itemBlue;2;0;-3;------;0;0;0
14;Guard;creature;2;2;2;---G--;0;0;0
15;Scout;creature;1;1;1;------;0;0;1
16;Pact;itemBlue;0;0;-2;------;-2;0;0
)";

inline CardSet tiny_cards() { return load_card_set(kTinyCards); }

inline Deck filled_deck(CardId id) {
    Deck d{};
    d.fill(id);
    return d;
}

inline CreatureInstance creature(const CardSet& cards, CardId id, std::uint8_t lane, bool ready = true) {
    const auto& c = cards.at(id);
    CreatureInstance ci;
    ci.source_card = id;
    ci.attack = static_cast<std::int16_t>(c.attack);
    ci.defense = static_cast<std::int16_t>(c.defense);
    ci.keywords = c.keywords;
    ci.lane = lane;
    ci.can_attack = ready;
    return ci;
}

/// A fresh game with both hands and boards cleared and the given mana for the active player.
inline GameState blank_state(const Engine& engine, int mana = 0) {
    auto state = engine.new_game(filled_deck(7), filled_deck(7), 1);
    for (auto& p : state.players) {
        p.hand.clear();
        for (auto& lane : p.lanes) lane.clear();
    }
    state.me().max_mana = mana;
    state.me().mana = mana;
    return state;
}

}  // namespace arena::testing
