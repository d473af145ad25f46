#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arena/baselines.hpp"
#include "arena/draft.hpp"
#include "arena/evolution.hpp"
#include "arena/match.hpp"

namespace arena {

// All win rates here are percentages with draws counted as half a win.

struct LabeledPolicy {
    std::string label;
    Genome genome;
};

/// Pairwise win rates (row vs column), mean and standard deviation over
/// repetitions. The diagonal is NaN (no self-pairing).
struct MatchupTable {
    std::vector<std::string> labels;
    Eigen::MatrixXd mean;
    Eigen::MatrixXd stddev;
    Eigen::VectorXd row_mean;
    Eigen::VectorXd row_stddev;
    std::vector<Eigen::MatrixXd> repetitions;
};

/// Each repetition draws `n_drafts` fresh evaluation drafts; every unordered
/// pair plays `games_per_pair` games per draft, half per side.
/// Cost: repetitions * P (P - 1) / 2 * n_drafts * games_per_pair.
MatchupTable round_robin_eval(const Simulator& sim, std::span<const LabeledPolicy> policies, std::size_t n_drafts,
                              int games_per_pair, std::size_t repetitions, std::uint64_t seed);

/// Mean win rate of `players` against every opponent, `games` games per
/// (player, opponent, draft). Cost: |players| |opponents| |drafts| games.
double pool_win_rate(const Simulator& sim, std::span<const Genome> players, std::span<const Genome> opponents,
                     std::span<const Draft> drafts, int games, std::uint64_t seed);

/// Ordering policies followed by `random_count` random genomes fixed by `seed`.
std::vector<Genome> make_opponent_pool(std::span<const OrderingPolicy> orderings, std::size_t random_count,
                                       std::size_t card_count, std::uint64_t seed);

struct CurvePoint {
    std::size_t generation = 0;
    std::uint64_t cost = 0;
    double win_rate = 0.0;
};

/// Top-`top` genomes of every checkpoint against the opponent pool. Every
/// checkpoint uses the same game seeds.
std::vector<CurvePoint> evolution_curve(const Simulator& sim, const RunHistory& history, std::span<const Draft> eval_drafts,
                                        std::span<const Genome> opponents, int games, std::uint64_t seed,
                                        std::size_t top = 5);

struct CorrelationPoint {
    std::size_t generation = 0;
    double train_win_rate = 0.0;
    double eval_win_rate = 0.0;
};

struct CorrelationResult {
    std::vector<CorrelationPoint> points;
    std::optional<double> pearson;  // nullopt when either side has zero variance
};

std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

CorrelationResult correlation_experiment(const Simulator& sim, const RunHistory& history,
                                         std::span<const Draft> train_drafts, std::span<const Draft> eval_drafts,
                                         std::span<const Genome> opponents, int games, std::uint64_t seed,
                                         std::size_t top = 5);

/// Rows: champion checkpoints (every `stride`-th snapshot, its top genomes);
/// columns: every snapshot's top genomes; cells: champion win rate over all
/// training drafts.
struct ChampionsResult {
    std::vector<std::size_t> champion_generations;
    std::vector<std::size_t> generations;
    Eigen::MatrixXd win_rate;
};

ChampionsResult champions_analysis(const Simulator& sim, const RunHistory& history, std::span<const Draft> train_drafts,
                                   int games, std::size_t stride, std::uint64_t seed, std::size_t top = 5);

void write_matchup_csv(std::ostream& out, const MatchupTable& table);
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);
void write_correlation_csv(std::ostream& out, const CorrelationResult& result);
void write_champions_csv(std::ostream& out, const ChampionsResult& result);
/// Human-readable "mean ± std" table with per-row averages.
std::string format_matchup_table(const MatchupTable& table);

}  // namespace arena
