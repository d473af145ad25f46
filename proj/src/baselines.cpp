#include "arena/baselines.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "arena/evolution.hpp"

namespace arena {

namespace {

std::vector<Genome> random_genomes(std::size_t n, std::size_t genes, std::uint64_t seed) {
    Rng rng(derive_seed(seed, Phase::Baseline));
    std::vector<Genome> out;
    for (auto& ind : random_population(n, genes, rng)) out.push_back(std::move(ind.genome));
    return out;
}

std::vector<Deck> decks_for(const Genome& genome, std::span<const Draft> drafts) {
    std::vector<Deck> decks;
    for (const auto& d : drafts) decks.push_back(build_deck(genome, d));
    return decks;
}

}  // namespace

DraftPolicy random_all_baseline(const Simulator& sim, std::size_t n, std::span<const Draft> drafts, int s_g,
                                std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_all_baseline: n must be >= 2");
    if (s_g < 2 || s_g % 2 != 0) throw std::invalid_argument("random_all_baseline: s_g must be even");
    const auto genomes = random_genomes(n, sim.engine().cards().size(), seed);
    std::vector<std::vector<Deck>> decks;
    for (const auto& g : genomes) decks.push_back(decks_for(g, drafts));

    std::vector<Pairing> pairings;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t d = 0; d < drafts.size(); ++d)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                pairings.push_back({&decks[a][d], &decks[b][d], s_g, derive_seed(seed, Phase::Evaluation, {d, a, b})});
                slots.emplace_back(a, b);
            }
    const auto results = sim.play(pairings);
    std::vector<std::int64_t> wins(n, 0);
    for (std::size_t i = 0; i < results.size(); ++i) {
        wins[slots[i].first] += results[i].a;
        wins[slots[i].second] += results[i].b;
    }
    const auto best = static_cast<std::size_t>(std::max_element(wins.begin(), wins.end()) - wins.begin());
    return DraftPolicy(genomes[best]);
}

DraftPolicy random_tournament_baseline(const Simulator& sim, std::size_t n, std::span<const Draft> drafts, int s_g,
                                       std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_tournament_baseline: n must be >= 2");
    if (s_g < 2 || s_g % 2 != 0) throw std::invalid_argument("random_tournament_baseline: s_g must be even");
    const auto genomes = random_genomes(n, sim.engine().cards().size(), seed);
    std::vector<std::vector<Deck>> decks;
    for (const auto& g : genomes) decks.push_back(decks_for(g, drafts));

    std::vector<std::size_t> bracket(n);
    std::iota(bracket.begin(), bracket.end(), 0);
    for (std::uint64_t round = 0; bracket.size() > 1; ++round) {
        std::vector<Pairing> pairings;
        for (std::size_t m = 0; m + 1 < bracket.size(); m += 2)
            for (std::size_t d = 0; d < drafts.size(); ++d)
                pairings.push_back({&decks[bracket[m]][d], &decks[bracket[m + 1]][d], s_g,
                                    derive_seed(seed, Phase::Evaluation, {round, m / 2, d})});
        const auto results = sim.play(pairings);
        std::vector<std::size_t> next;
        for (std::size_t m = 0; m + 1 < bracket.size(); m += 2) {
            std::int64_t a = 0, b = 0;
            for (std::size_t d = 0; d < drafts.size(); ++d) {
                a += results[(m / 2) * drafts.size() + d].a;
                b += results[(m / 2) * drafts.size() + d].b;
            }
            next.push_back(b > a ? bracket[m + 1] : bracket[m]);
        }
        if (bracket.size() % 2 == 1) next.push_back(bracket.back());
        bracket = std::move(next);
    }
    return DraftPolicy(genomes[bracket.front()]);
}

OrderingPolicy::OrderingPolicy(std::vector<CardId> ranking) : ranking_(std::move(ranking)) {
    std::vector<bool> seen(ranking_.size() + 1, false);
    for (CardId id : ranking_) {
        if (id < 1 || id > ranking_.size() || seen[id])
            throw std::invalid_argument("ordering is not a permutation of 1.." + std::to_string(ranking_.size()));
        seen[id] = true;
    }
}

DraftPolicy ordering_to_policy(const OrderingPolicy& ordering) {
    const auto n = ordering.size();
    Genome values(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
        values[ordering.ranking()[r] - 1] = 1.0 - static_cast<double>(r) / static_cast<double>(n);
    return DraftPolicy(std::move(values));
}

OrderingPolicy parse_ordering(std::string_view text, std::size_t card_count) {
    std::vector<CardId> ranking;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t used = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(line, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != line.size() || id < 1 || id > card_count)
            throw std::invalid_argument("ordering line " + std::to_string(line_no) + ": bad card id '" + line + "'");
        ranking.push_back(static_cast<CardId>(id));
    }
    if (ranking.size() != card_count)
        throw std::invalid_argument("ordering lists " + std::to_string(ranking.size()) + " ids, expected " +
                                    std::to_string(card_count));
    return OrderingPolicy(std::move(ranking));
}

OrderingPolicy load_ordering_file(const std::string& path, std::size_t card_count) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open ordering file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ordering(ss.str(), card_count);
}

}  // namespace arena
