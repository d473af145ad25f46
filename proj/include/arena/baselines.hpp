#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "arena/draft.hpp"
#include "arena/match.hpp"

namespace arena {

/// n uniform-random genomes, every ordered pair plays s_g games per draft
/// (n (n - 1) s_g d_t games in total); the genome with most wins is returned,
/// ties to the lower index.
DraftPolicy random_all_baseline(const Simulator& sim, std::size_t n, std::span<const Draft> drafts, int s_g,
                                std::uint64_t seed);

/// Single-elimination bracket over n random genomes; a matchup is s_g games
/// per draft, a tie advances the lower bracket index. An odd bracket gives its
/// last entrant a bye, so there are always n - 1 matchups.
/// Costs (n - 1) s_g d_t games.
DraftPolicy random_tournament_baseline(const Simulator& sim, std::size_t n, std::span<const Draft> drafts, int s_g,
                                       std::uint64_t seed);

/// A permutation of all card ids, most valuable first.
class OrderingPolicy {
public:
    explicit OrderingPolicy(std::vector<CardId> ranking);
    [[nodiscard]] std::span<const CardId> ranking() const noexcept { return ranking_; }
    [[nodiscard]] std::size_t size() const noexcept { return ranking_.size(); }

private:
    std::vector<CardId> ranking_;
};

/// Card at rank r (0-based) gets value 1 - r / |C|.
DraftPolicy ordering_to_policy(const OrderingPolicy& ordering);

/// One card id per line ('#' comments allowed), each of 1..card_count exactly once.
OrderingPolicy parse_ordering(std::string_view text, std::size_t card_count);
OrderingPolicy load_ordering_file(const std::string& path, std::size_t card_count);

}  // namespace arena
