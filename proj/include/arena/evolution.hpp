#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/draft.hpp"
#include "arena/match.hpp"
#include "arena/seeding.hpp"

namespace arena {

enum class Variant : std::uint8_t {
    EvoBase,
    Ag,
    AgAll,
    AgWeights,
    AgWeightsKd,
    AgWeightsKg,
    RandomAll,
    RandomTournament,
};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);
bool is_active_genes_variant(Variant v);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every hyperparameter of a training run. Defaults where the method leaves a
/// value open: n = 20, d_t = 100, s_g = 2, s_r = 10.
struct TrainerConfig {
    std::size_t n = 20;
    std::size_t d_t = 100;
    /// 0 resolves to d_t for the active-genes family and to "until the
    /// budget runs out" for evo_base.
    std::size_t g = 0;
    int s_g = 2;
    int s_r = 10;
    std::size_t tournament_size = 4;
    int tournament_games = 10;
    double mutation_rate = 0.05;
    std::size_t elitism = 2;
    Variant variant = Variant::AgWeights;
    double merge_weight = 0.75;
    std::size_t K = 1;
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 1;
    AgentKind player = AgentKind::Random;
    std::uint8_t lanes = 2;
    unsigned threads = 1;
    std::size_t top_k = 5;

    [[nodiscard]] std::size_t generations() const;
    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

struct Individual {
    Genome genome;
    std::int64_t score = 0;  // half-wins
};

using Population = std::vector<Individual>;

struct GenerationSnapshot {
    std::size_t generation = 0;
    std::uint64_t cost = 0;
    std::vector<std::size_t> draft_ids;
    std::vector<Individual> top;
    double active_fraction = 1.0;
};

struct RunHistory {
    std::vector<GenerationSnapshot> generations;
};

struct TrainResult {
    Population population;
    Genome best;
    RunHistory history;
};

enum class MergeRule : std::uint8_t { Replace, Weighted, All };

MergeRule merge_rule_for(Variant v);

// --- genetic operators -------------------------------------------------------

Population random_population(std::size_t n, std::size_t genes, Rng& rng);
Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng);
/// Resamples each gene uniformly in [0, 1] with probability `rate`.
void mutate(Genome& genome, double rate, Rng& rng);

/// Gene-wise merge of a parent and a child:
///   Replace  : active ? child : parent
///   Weighted : active ? weight * parent + (1 - weight) * child : parent
///   All      : child
template <typename ParentDerived, typename ChildDerived>
GenomeT<typename ParentDerived::Scalar> merge_one(const Eigen::MatrixBase<ParentDerived>& parent,
                                                  const Eigen::MatrixBase<ChildDerived>& child, const ActiveSet& active,
                                                  MergeRule rule, typename ParentDerived::Scalar weight) {
    using Scalar = typename ParentDerived::Scalar;
    if (parent.size() != child.size()) throw std::invalid_argument("merge_one: genome length mismatch");
    switch (rule) {
        case MergeRule::All: return child;
        case MergeRule::Replace:
            if (static_cast<Eigen::Index>(active.universe()) != parent.size())
                throw std::invalid_argument("merge_one: active set size mismatch");
            return active.mask().select(child.array(), parent.array()).matrix();
        case MergeRule::Weighted: {
            if (static_cast<Eigen::Index>(active.universe()) != parent.size())
                throw std::invalid_argument("merge_one: active set size mismatch");
            const Scalar child_weight = Scalar(1) - weight;
            return active.mask().select(weight * parent.array() + child_weight * child.array(), parent.array()).matrix();
        }
    }
    return parent;
}

/// Index chosen with probability proportional to score; uniform if all are zero.
std::size_t roulette(std::span<const Individual> population, Rng& rng);

/// Ranks indices by score, highest first; ties keep the lower index.
std::vector<std::size_t> rank_by_score(std::span<const Individual> population);

// --- phases of a generation -------------------------------------------------

/// Samples `tournament_size` individuals without replacement; each ordered pair
/// plays `tournament_games` games per draft. Returns the two best by
/// tournament wins, ties broken by sample order.
std::pair<std::size_t, std::size_t> select_parents(const Simulator& sim, std::span<const Individual> population,
                                                   std::span<const Draft> drafts, std::size_t tournament_size,
                                                   int tournament_games, Rng& rng, std::uint64_t stream);

/// `rounds` rounds of sorting by accumulated score and pairing ranks
/// (1,2), (3,4), ...; each pair plays s_g games per draft.
void score_population(const Simulator& sim, Population& population, std::span<const Draft> drafts, int rounds,
                      int s_g, std::uint64_t stream);

Population create_offspring(const Simulator& sim, std::span<const Individual> population, std::span<const Draft> drafts,
                            const TrainerConfig& config, int scoring_rounds, Rng& rng, std::uint64_t stream);

/// Merged individuals carry the score of the child they were built from.
Population merge_all(std::span<const Individual> old_population, std::span<const Individual> offspring,
                     const ActiveSet& active, MergeRule rule, double weight, Rng& rng);

struct GenerationPlan {
    std::vector<std::size_t> drafts;
    int scoring_rounds = 0;
};

/// Draft batches per generation for the active-genes family.
std::vector<GenerationPlan> variant_schedule(const TrainerConfig& config);

// --- trainers -----------------------------------------------------------------

TrainResult evo_base_train(const TrainerConfig& config, std::span<const Draft> drafts, const Simulator& sim);
TrainResult ag_train(const TrainerConfig& config, std::span<const Draft> drafts, const Simulator& sim);

// --- cost model ------------------------------------------------------------------

struct CostParams {
    std::uint64_t n = 0;
    std::uint64_t d_t = 0;
    std::uint64_t g = 0;
    std::uint64_t s_g = 0;
    std::uint64_t s_r = 0;
    std::uint64_t tournament_size = 4;
    std::uint64_t tournament_games = 10;
    std::uint64_t K = 1;
};

/// `generations_run` counts scheduled generations (g / K for Kd, g * K for Kg).
CostParams cost_params(const TrainerConfig& config, std::uint64_t generations_run);

/// Closed-form number of simulated games for a variant, with g the configured
/// generation count. For ag / ag_all / ag_weights / Kd this follows the game loops:
///   g * (n * tSize * (tSize - 1) * tGames + s_r * (n / 2) * s_g)
/// Kg runs g * K generations of one draft with s_r / K scoring rounds each.
std::uint64_t estimate_cost(Variant variant, const CostParams& p);

/// The alternative printed closed form n * g * (tSize * (tSize - 1) * tGames + s_r * s_g * d_t).
std::uint64_t printed_active_genes_cost(const CostParams& p);

}  // namespace arena
