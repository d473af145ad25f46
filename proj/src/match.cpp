#include "arena/match.hpp"

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "arena/seeding.hpp"

namespace arena {

Simulator::Simulator(const Engine& engine, AgentKind player, CostCounter& cost, unsigned threads)
    : engine_(&engine), player_(player), cost_(&cost), threads_(threads == 0 ? 1 : threads) {}

Outcome Simulator::play(const Deck& deck0, const Deck& deck1, std::uint64_t seed) const {
    const Agent a0{player_, derive_seed(seed, {0})};
    const Agent a1{player_, derive_seed(seed, {1})};
    cost_->add(1);
    return simulate_game(*engine_, deck0, deck1, a0, a1, seed);
}

std::vector<PairingScore> Simulator::play(std::span<const Pairing> pairings) const {
    struct Job {
        std::uint32_t pairing;
        std::uint32_t game;
    };
    std::vector<Job> jobs;
    for (std::uint32_t p = 0; p < pairings.size(); ++p)
        for (int g = 0; g < pairings[p].games; ++g) jobs.push_back({p, static_cast<std::uint32_t>(g)});

    std::vector<Outcome> outcomes(jobs.size());
    auto run = [&](std::size_t i) {
        const auto& pr = pairings[jobs[i].pairing];
        const bool a_first = jobs[i].game % 2 == 0;
        const auto seed = derive_seed(pr.seed, {jobs[i].game});
        outcomes[i] = a_first ? play(*pr.deck_a, *pr.deck_b, seed) : play(*pr.deck_b, *pr.deck_a, seed);
    };
    if (threads_ <= 1 || jobs.size() < 2) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run(i);
    } else {
        tbb::task_arena arena(static_cast<int>(threads_));
        arena.execute([&] { tbb::parallel_for(std::size_t{0}, jobs.size(), run); });
    }

    std::vector<PairingScore> scores(pairings.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& s = scores[jobs[i].pairing];
        const bool a_first = jobs[i].game % 2 == 0;
        switch (outcomes[i]) {
            case Outcome::Draw:
                s.a += 1;
                s.b += 1;
                break;
            case Outcome::WinP0: (a_first ? s.a : s.b) += kWinHalves; break;
            case Outcome::WinP1: (a_first ? s.b : s.a) += kWinHalves; break;
        }
    }
    return scores;
}

}  // namespace arena
