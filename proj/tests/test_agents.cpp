#include <gtest/gtest.h>

#include <cmath>

#include "arena/agents.hpp"
#include "arena/draft.hpp"
#include "invariants.hpp"
#include "support.hpp"

using namespace arena;
using namespace arena::testing;

namespace {

class AgentTest : public ::testing::Test {
protected:
    CardSet cards = tiny_cards();
    Engine engine{cards};
};

}  // namespace

TEST_F(AgentTest, MaterialEmptyBoardIsZero) {
    const auto s = blank_state(engine);
    EXPECT_EQ(material(s, 0), 0);
}

TEST_F(AgentTest, MaterialDirectSum) {
    auto s = blank_state(engine);
    s.players[0].lanes[0].push_back(creature(cards, 6, 0));  // 3/2
    s.players[1].hp = 25;
    EXPECT_EQ(material(s, 0), 10);
    EXPECT_EQ(material(s, 1), -10);
}

TEST_F(AgentTest, RandomSinglePass) {
    Rng rng(1);
    const Action only[] = {Action::pass()};
    EXPECT_EQ(random_agent_choose(only, rng), Action::pass());
}

TEST_F(AgentTest, RandomIsUniform) {
    const std::vector<Action> actions{Action::summon(1, 0), Action::summon(1, 1), Action::attack(0, 0, Target::face(1)),
                                      Action::pass()};
    Rng rng(123);
    std::array<int, 4> counts{};
    constexpr int trials = 10'000;
    for (int i = 0; i < trials; ++i) {
        const auto a = random_agent_choose(actions, rng);
        ++counts[static_cast<std::size_t>(std::find(actions.begin(), actions.end(), a) - actions.begin())];
    }
    const double sigma = std::sqrt(trials * 0.25 * 0.75);
    for (int c : counts) EXPECT_LT(std::abs(c - trials * 0.25), 3 * sigma);
}

TEST_F(AgentTest, RandomReproducible) {
    const std::vector<Action> actions{Action::summon(1, 0), Action::summon(1, 1), Action::pass()};
    Rng a(9), b(9);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(random_agent_choose(actions, a), random_agent_choose(actions, b));
}

TEST_F(AgentTest, GreedyAttacksOpenFace) {
    auto s = blank_state(engine);
    s.me().lanes[0].push_back(creature(cards, 6, 0));
    const auto actions = engine.legal_actions(s);
    EXPECT_EQ(greedy_agent_choose(engine, s, actions.span()), Action::attack(0, 0, Target::face(1)));
}

TEST_F(AgentTest, GreedyPassesIntoBadGuardTrade) {
    auto s = blank_state(engine);
    s.me().lanes[0].push_back(creature(cards, 7, 0));     // 1/1
    s.enemy().lanes[0].push_back(creature(cards, 8, 0));  // 5/5 Guard
    const auto actions = engine.legal_actions(s);
    ASSERT_EQ(actions.size(), 2u);
    EXPECT_EQ(greedy_agent_choose(engine, s, actions.span()), Action::pass());
}

TEST_F(AgentTest, GreedyTakesLethalOverMaterial) {
    auto s = blank_state(engine);
    s.me().lanes[0].push_back(creature(cards, 8, 0));     // 5/5 trades into the Guard for +2 material
    s.enemy().lanes[0].push_back(creature(cards, 14, 0)); // 2/2 Guard
    s.me().lanes[1].push_back(creature(cards, 7, 1));     // 1/1 with an open face: +1 material, but wins
    s.enemy().hp = 1;
    const auto actions = engine.legal_actions(s);
    ASSERT_EQ(actions[0], Action::attack(0, 0, Target::creature(1, 0, 0)));
    EXPECT_EQ(greedy_agent_choose(engine, s, actions.span()), Action::attack(1, 0, Target::face(1)));
}

TEST_F(AgentTest, GreedyIsDeterministicAndUndominated) {
    const auto big = generate_card_set(kDefaultCardSeed, kDefaultCardCount);
    const Engine e(big);
    const auto draft = generate_draft(big, 4);
    Genome values = Genome::LinSpaced(static_cast<Eigen::Index>(big.size()), 0.0, 1.0);
    const auto deck = build_deck(values, draft);
    auto s = e.new_game(deck, deck, 8);
    Rng rng(1);
    for (int step = 0; step < 200 && !s.over; ++step) {
        const auto actions = e.legal_actions(s);
        const auto g = greedy_agent_choose(e, s, actions.span());
        EXPECT_EQ(g, greedy_agent_choose(e, s, actions.span()));
        const int me = s.active;
        const auto chosen = e.applied(s, g);
        if (!(chosen.over && *chosen.over == (me == 0 ? Outcome::WinP0 : Outcome::WinP1)))
            for (const auto& a : actions) {
                const auto other = e.applied(s, a);
                if (other.over && *other.over == (me == 0 ? Outcome::WinP0 : Outcome::WinP1)) ADD_FAILURE() << "missed a win";
                EXPECT_LE(material(other, me), material(chosen, me));
            }
        e.apply(s, random_agent_choose(actions.span(), rng));
    }
}

TEST_F(AgentTest, RandomPlayoutsKeepInvariants) {
    const auto big = generate_card_set(kDefaultCardSeed, kDefaultCardCount);
    const Engine e(big);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto draft = generate_draft(big, seed);
        Rng rng(seed);
        Genome a(static_cast<Eigen::Index>(big.size())), b(static_cast<Eigen::Index>(big.size()));
        for (auto& v : a) v = uniform01(rng);
        for (auto& v : b) v = uniform01(rng);
        const auto kind = seed % 3 == 0 ? AgentKind::Greedy : AgentKind::Random;
        const auto report = checked_playout(e, build_deck(a, draft), build_deck(b, draft), kind, AgentKind::Random, seed);
        ASSERT_TRUE(report.violations.empty()) << "seed " << seed << ": " << report.violations.front();
    }
}
