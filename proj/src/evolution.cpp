#include "arena/evolution.hpp"

#include <algorithm>
#include <numeric>

namespace arena {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 8> kVariantNames{{
    {Variant::EvoBase, "evo_base"},
    {Variant::Ag, "ag"},
    {Variant::AgAll, "ag_all"},
    {Variant::AgWeights, "ag_weights"},
    {Variant::AgWeightsKd, "ag_weights_kd"},
    {Variant::AgWeightsKg, "ag_weights_kg"},
    {Variant::RandomAll, "random_all"},
    {Variant::RandomTournament, "random_tournament"},
}};

std::uint64_t tournament_games_per_draft(const CostParams& p) {
    return p.tournament_size * (p.tournament_size - 1) * p.tournament_games;
}

GenerationSnapshot snapshot(std::size_t generation, std::uint64_t cost, std::vector<std::size_t> draft_ids,
                            std::span<const Individual> population, std::size_t top_k, double active_fraction) {
    GenerationSnapshot snap;
    snap.generation = generation;
    snap.cost = cost;
    snap.draft_ids = std::move(draft_ids);
    snap.active_fraction = active_fraction;
    const auto order = rank_by_score(population);
    for (std::size_t i = 0; i < std::min(top_k, order.size()); ++i) snap.top.push_back(population[order[i]]);
    return snap;
}

std::vector<Deck> decks_for(const Genome& genome, std::span<const Draft> drafts) {
    std::vector<Deck> decks;
    decks.reserve(drafts.size());
    for (const auto& d : drafts) decks.push_back(build_deck(genome, d));
    return decks;
}

std::size_t tournament_pick(std::span<const Individual> population, std::size_t size, Rng& rng) {
    std::vector<std::size_t> idx(population.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t best = population.size();
    for (std::size_t k = 0; k < size; ++k) {
        const auto j = k + uniform_index(rng, idx.size() - k);
        std::swap(idx[k], idx[j]);
        if (best == population.size() || population[idx[k]].score > population[best].score) best = idx[k];
    }
    return best;
}

}  // namespace

std::string_view to_string(Variant v) {
    for (const auto& [variant, name] : kVariantNames)
        if (variant == v) return name;
    return "?";
}

std::optional<Variant> parse_variant(std::string_view text) {
    for (const auto& [variant, name] : kVariantNames)
        if (name == text) return variant;
    return std::nullopt;
}

bool is_active_genes_variant(Variant v) {
    return v == Variant::Ag || v == Variant::AgAll || v == Variant::AgWeights || v == Variant::AgWeightsKd ||
           v == Variant::AgWeightsKg;
}

MergeRule merge_rule_for(Variant v) {
    switch (v) {
        case Variant::Ag: return MergeRule::Replace;
        case Variant::AgAll: return MergeRule::All;
        default: return MergeRule::Weighted;
    }
}

std::size_t TrainerConfig::generations() const {
    if (g != 0) return g;
    return is_active_genes_variant(variant) ? d_t : 0;
}

void TrainerConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    require(n >= 2, "n must be >= 2");
    require(d_t >= 1, "d_t must be >= 1");
    require(s_g >= 2 && s_g % 2 == 0, "s_g must be even and positive (half the games per side)");
    require(mutation_rate >= 0.0 && mutation_rate <= 1.0, "mutation rate must lie in [0, 1]");
    require(lanes == 1 || lanes == 2, "lanes must be 1 or 2");
    require(top_k >= 1, "top_k must be >= 1");
    if (variant == Variant::EvoBase) require(elitism <= n, "elitism must not exceed n");
    if (!is_active_genes_variant(variant)) return;

    const auto gens = generations();
    require(n % 2 == 0, "active-genes scoring pairs individuals: n must be even");
    require(s_r >= 1, "s_r must be >= 1");
    require(tournament_size >= 2 && tournament_size <= n, "tournament size must lie in [2, n]");
    require(tournament_games >= 2 && tournament_games % 2 == 0, "tournament games must be even and positive");
    require(merge_weight >= 0.0 && merge_weight <= 1.0, "merge weight must lie in [0, 1]");
    require(gens >= 1, "g must be >= 1");
    if (variant == Variant::AgWeightsKd) {
        require(K >= 1 && gens % K == 0, "ag_weights_kd: K=" + std::to_string(K) + " must divide g=" + std::to_string(gens));
    }
    if (variant == Variant::AgWeightsKg) {
        require(K >= 1 && s_r % static_cast<int>(K) == 0,
                "ag_weights_kg: K=" + std::to_string(K) + " must divide s_r=" + std::to_string(s_r));
    }
    require(d_t >= gens, "the active-genes schedule needs d_t >= g fresh drafts");
}

Population random_population(std::size_t n, std::size_t genes, Rng& rng) {
    Population pop(n);
    for (auto& ind : pop) {
        ind.genome.resize(static_cast<Eigen::Index>(genes));
        for (auto& v : ind.genome) v = uniform01(rng);
    }
    return pop;
}

Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover: genome length mismatch");
    ActiveSet::Mask from_a(a.size());
    for (auto& bit : from_a) bit = uniform01(rng) < 0.5;
    return from_a.select(a.array(), b.array()).matrix();
}

void mutate(Genome& genome, double rate, Rng& rng) {
    for (auto& v : genome)
        if (uniform01(rng) < rate) v = uniform01(rng);
}

std::size_t roulette(std::span<const Individual> population, Rng& rng) {
    const auto total = std::accumulate(population.begin(), population.end(), std::int64_t{0},
                                       [](std::int64_t acc, const Individual& i) { return acc + i.score; });
    if (total <= 0) return uniform_index(rng, population.size());
    auto ticket = static_cast<std::int64_t>(uniform_index(rng, static_cast<std::size_t>(total)));
    for (std::size_t i = 0; i < population.size(); ++i) {
        ticket -= population[i].score;
        if (ticket < 0) return i;
    }
    return population.size() - 1;
}

std::vector<std::size_t> rank_by_score(std::span<const Individual> population) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return population[a].score > population[b].score; });
    return order;
}

std::pair<std::size_t, std::size_t> select_parents(const Simulator& sim, std::span<const Individual> population,
                                                   std::span<const Draft> drafts, std::size_t tournament_size,
                                                   int tournament_games, Rng& rng, std::uint64_t stream) {
    if (population.size() < tournament_size || tournament_size < 2)
        throw std::invalid_argument("select_parents: population smaller than the tournament");
    if (tournament_games % 2 != 0) throw std::invalid_argument("select_parents: tournament games must be even");

    std::vector<std::size_t> pool(population.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::size_t> sample(tournament_size);
    for (std::size_t k = 0; k < tournament_size; ++k) {
        const auto j = k + uniform_index(rng, pool.size() - k);
        std::swap(pool[k], pool[j]);
        sample[k] = pool[k];
    }

    std::vector<std::vector<Deck>> decks;
    for (auto idx : sample) decks.push_back(decks_for(population[idx].genome, drafts));

    struct Slot {
        std::size_t a, b;
    };
    std::vector<Pairing> pairings;
    std::vector<Slot> slots;
    for (std::size_t d = 0; d < drafts.size(); ++d)
        for (std::size_t a = 0; a < tournament_size; ++a)
            for (std::size_t b = 0; b < tournament_size; ++b) {
                if (a == b) continue;
                pairings.push_back({&decks[a][d], &decks[b][d], tournament_games,
                                    derive_seed(stream, {d, a, b})});
                slots.push_back({a, b});
            }
    const auto results = sim.play(pairings);
    std::vector<std::int64_t> wins(tournament_size, 0);
    for (std::size_t i = 0; i < results.size(); ++i) {
        wins[slots[i].a] += results[i].a;
        wins[slots[i].b] += results[i].b;
    }
    std::vector<std::size_t> order(tournament_size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });
    return {sample[order[0]], sample[order[1]]};
}

void score_population(const Simulator& sim, Population& population, std::span<const Draft> drafts, int rounds,
                      int s_g, std::uint64_t stream) {
    if (population.size() % 2 != 0) throw std::invalid_argument("score_population: population size must be even");
    if (s_g % 2 != 0) throw std::invalid_argument("score_population: s_g must be even");

    std::vector<std::vector<Deck>> decks;
    decks.reserve(population.size());
    for (const auto& ind : population) decks.push_back(decks_for(ind.genome, drafts));

    for (int round = 0; round < rounds; ++round) {
        const auto order = rank_by_score(population);
        std::vector<Pairing> pairings;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t d = 0; d < drafts.size(); ++d)
            for (std::size_t r = 0; r + 1 < order.size(); r += 2) {
                const auto a = order[r], b = order[r + 1];
                pairings.push_back({&decks[a][d], &decks[b][d], s_g,
                                    derive_seed(stream, {static_cast<std::uint64_t>(round), d, r / 2})});
                slots.emplace_back(a, b);
            }
        const auto results = sim.play(pairings);
        for (std::size_t i = 0; i < results.size(); ++i) {
            population[slots[i].first].score += results[i].a;
            population[slots[i].second].score += results[i].b;
        }
    }
}

Population create_offspring(const Simulator& sim, std::span<const Individual> population, std::span<const Draft> drafts,
                            const TrainerConfig& config, int scoring_rounds, Rng& rng, std::uint64_t stream) {
    Population offspring(population.size());
    for (std::size_t slot = 0; slot < offspring.size(); ++slot) {
        const auto [p1, p2] = select_parents(sim, population, drafts, config.tournament_size, config.tournament_games,
                                             rng, derive_seed(stream, Phase::Tournament, {slot}));
        offspring[slot].genome = uniform_crossover(population[p1].genome, population[p2].genome, rng);
        mutate(offspring[slot].genome, config.mutation_rate, rng);
    }
    score_population(sim, offspring, drafts, scoring_rounds, config.s_g, derive_seed(stream, Phase::Scoring));
    return offspring;
}

Population merge_all(std::span<const Individual> old_population, std::span<const Individual> offspring,
                     const ActiveSet& active, MergeRule rule, double weight, Rng& rng) {
    Population merged(old_population.size());
    for (auto& ind : merged) {
        const auto& parent = old_population[roulette(old_population, rng)];
        const auto& child = offspring[roulette(offspring, rng)];
        ind.genome = merge_one(parent.genome, child.genome, active, rule, weight);
        ind.score = child.score;
    }
    return merged;
}

std::vector<GenerationPlan> variant_schedule(const TrainerConfig& config) {
    config.validate();
    if (!is_active_genes_variant(config.variant))
        throw ConfigError("variant_schedule: " + std::string(to_string(config.variant)) + " has no draft schedule");
    const auto gens = config.generations();
    std::vector<GenerationPlan> plan;
    switch (config.variant) {
        case Variant::AgWeightsKd:
            for (std::size_t b = 0; b < gens / config.K; ++b) {
                GenerationPlan p{{}, config.s_r};
                for (std::size_t k = 0; k < config.K; ++k) p.drafts.push_back(b * config.K + k);
                plan.push_back(std::move(p));
            }
            break;
        case Variant::AgWeightsKg:
            for (std::size_t i = 0; i < gens * config.K; ++i)
                plan.push_back({{i / config.K}, config.s_r / static_cast<int>(config.K)});
            break;
        default:
            for (std::size_t i = 0; i < gens; ++i) plan.push_back({{i}, config.s_r});
            break;
    }
    return plan;
}

TrainResult evo_base_train(const TrainerConfig& config, std::span<const Draft> drafts, const Simulator& sim) {
    if (config.variant != Variant::EvoBase) throw ConfigError("evo_base_train called with another variant");
    config.validate();
    if (drafts.size() != config.d_t) throw ConfigError("expected d_t training drafts");
    const std::size_t n = config.n;
    const std::size_t genes = sim.engine().cards().size();
    const std::uint64_t pass_cost = n * (n - 1) * static_cast<std::uint64_t>(config.s_g) * drafts.size();
    const std::uint64_t start = sim.cost().games();
    if (pass_cost > config.budget) throw ConfigError("budget is smaller than one evaluation pass");

    std::vector<std::size_t> all_drafts(drafts.size());
    std::iota(all_drafts.begin(), all_drafts.end(), 0);

    auto evaluate = [&](Population& pop, std::size_t generation) {
        std::vector<std::vector<Deck>> decks;
        for (auto& ind : pop) {
            ind.score = 0;
            decks.push_back(decks_for(ind.genome, drafts));
        }
        std::vector<Pairing> pairings;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        const auto stream = derive_seed(config.seed, Phase::Scoring, {generation});
        for (std::size_t d = 0; d < drafts.size(); ++d)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == b) continue;
                    pairings.push_back({&decks[a][d], &decks[b][d], config.s_g, derive_seed(stream, {d, a, b})});
                    slots.emplace_back(a, b);
                }
        const auto results = sim.play(pairings);
        for (std::size_t i = 0; i < results.size(); ++i) {
            pop[slots[i].first].score += results[i].a;
            pop[slots[i].second].score += results[i].b;
        }
    };

    Rng init(derive_seed(config.seed, Phase::Init));
    TrainResult result;
    result.population = random_population(n, genes, init);
    evaluate(result.population, 0);
    result.history.generations.push_back(
        snapshot(0, sim.cost().games() - start, all_drafts, result.population, config.top_k, 1.0));

    const std::size_t max_gens = config.generations();
    const std::size_t elites = std::min(config.elitism, n);
    const std::size_t tsize = std::min(config.tournament_size, n);
    for (std::size_t gen = 1; max_gens == 0 || gen <= max_gens; ++gen) {
        if (sim.cost().games() - start + pass_cost > config.budget) break;
        Rng rng(derive_seed(config.seed, Phase::Breeding, {gen}));
        const auto& pop = result.population;
        const auto order = rank_by_score(pop);
        Population next;
        for (std::size_t e = 0; e < elites; ++e) next.push_back({pop[order[e]].genome, 0});
        while (next.size() < n) {
            const auto p1 = tournament_pick(pop, tsize, rng);
            const auto p2 = tournament_pick(pop, tsize, rng);
            Genome child = uniform_crossover(pop[p1].genome, pop[p2].genome, rng);
            mutate(child, config.mutation_rate, rng);
            next.push_back({std::move(child), 0});
        }
        evaluate(next, gen);
        result.population = std::move(next);
        result.history.generations.push_back(
            snapshot(gen, sim.cost().games() - start, all_drafts, result.population, config.top_k, 1.0));
    }
    result.best = result.population[rank_by_score(result.population).front()].genome;
    return result;
}

TrainResult ag_train(const TrainerConfig& config, std::span<const Draft> drafts, const Simulator& sim) {
    if (!is_active_genes_variant(config.variant)) throw ConfigError("ag_train called with a non active-genes variant");
    const auto plan = variant_schedule(config);
    if (drafts.size() != config.d_t) throw ConfigError("expected d_t training drafts");
    const std::size_t genes = sim.engine().cards().size();
    const auto rule = merge_rule_for(config.variant);
    const std::uint64_t start = sim.cost().games();
    const std::uint64_t per_draft_tournament =
        config.n * config.tournament_size * (config.tournament_size - 1) * static_cast<std::uint64_t>(config.tournament_games);

    Rng init(derive_seed(config.seed, Phase::Init));
    TrainResult result;
    result.population = random_population(config.n, genes, init);

    for (std::size_t gen = 0; gen < plan.size(); ++gen) {
        const auto& step = plan[gen];
        const std::uint64_t k = step.drafts.size();
        const std::uint64_t gen_cost = per_draft_tournament * k +
                                       static_cast<std::uint64_t>(step.scoring_rounds) * k * (config.n / 2) *
                                           static_cast<std::uint64_t>(config.s_g);
        if (sim.cost().games() - start + gen_cost > config.budget) break;

        std::vector<Draft> batch;
        for (auto d : step.drafts) batch.push_back(drafts[d]);
        const auto stream = derive_seed(config.seed, Phase::Breeding, {gen});
        Rng rng(stream);
        const auto offspring = create_offspring(sim, result.population, batch, config, step.scoring_rounds, rng, stream);
        const auto active = rule == MergeRule::All ? ActiveSet::all(genes) : active_genes(batch, genes);
        Rng merge_rng(derive_seed(config.seed, Phase::Merge, {gen}));
        result.population = merge_all(result.population, offspring, active, rule, config.merge_weight, merge_rng);
        result.history.generations.push_back(snapshot(gen + 1, sim.cost().games() - start, step.drafts,
                                                      result.population, config.top_k,
                                                      static_cast<double>(active.count()) / static_cast<double>(genes)));
    }
    result.best = result.population[rank_by_score(result.population).front()].genome;
    return result;
}

CostParams cost_params(const TrainerConfig& config, std::uint64_t generations_run) {
    CostParams p;
    p.n = config.n;
    p.d_t = config.d_t;
    p.s_g = static_cast<std::uint64_t>(config.s_g);
    p.s_r = static_cast<std::uint64_t>(config.s_r);
    p.tournament_size = config.tournament_size;
    p.tournament_games = static_cast<std::uint64_t>(config.tournament_games);
    p.K = config.K;
    switch (config.variant) {
        case Variant::AgWeightsKd: p.g = generations_run * config.K; break;
        case Variant::AgWeightsKg: p.g = generations_run / config.K; break;
        default: p.g = generations_run; break;
    }
    return p;
}

std::uint64_t estimate_cost(Variant variant, const CostParams& p) {
    const std::uint64_t round_robin = p.n * (p.n - 1) * p.s_g * p.d_t;
    const std::uint64_t scoring = p.s_r * (p.n / 2) * p.s_g;
    switch (variant) {
        case Variant::RandomAll: return round_robin;
        case Variant::RandomTournament: return (p.n - 1) * p.s_g * p.d_t;
        case Variant::EvoBase: return round_robin * (1 + p.g);
        case Variant::Ag:
        case Variant::AgAll:
        case Variant::AgWeights:
        case Variant::AgWeightsKd: return p.g * (p.n * tournament_games_per_draft(p) + scoring);
        case Variant::AgWeightsKg: return p.g * p.K * p.n * tournament_games_per_draft(p) + p.g * scoring;
    }
    throw std::invalid_argument("estimate_cost: unknown variant");
}

std::uint64_t printed_active_genes_cost(const CostParams& p) {
    return p.n * p.g * (tournament_games_per_draft(p) + p.s_r * p.s_g * p.d_t);
}

}  // namespace arena
