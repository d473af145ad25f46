// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arena/agents.hpp"
#include "arena/baselines.hpp"
#include "arena/game_log.hpp"
#include "arena/harness.hpp"
#include "arena/run.hpp"
#include "invariants.hpp"
#include "support.hpp"

using namespace arena;
using namespace arena::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

void merge_exactness() {
    const auto start = Clock::now();
    Rng rng(derive_seed(2024, {1}));
    std::size_t bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t len = 1 + uniform_index(rng, 200);
        Genome parent(len), child(len);
        ActiveSet active(len);
        for (std::size_t i = 0; i < len; ++i) {
            parent[i] = uniform01(rng);
            child[i] = uniform01(rng);
            if (uniform01(rng) < 0.4) active.insert(static_cast<CardId>(i + 1));
        }
        const auto ag = merge_one(parent, child, active, MergeRule::Replace, 0.75);
        const auto agw = merge_one(parent, child, active, MergeRule::Weighted, 0.75);
        const auto all = merge_one(parent, child, active, MergeRule::All, 0.75);
        for (std::size_t i = 0; i < len; ++i) {
            const bool on = active.mask()[static_cast<Eigen::Index>(i)];
            const double want_ag = on ? child[i] : parent[i];
            const double want_w = on ? 0.75 * parent[i] + 0.25 * child[i] : parent[i];
            bad += ag[i] != want_ag;
            bad += agw[i] != want_w;
            bad += all[i] != child[i];
        }
    }
    const double secs = seconds_since(start);
    report("merge-exactness", bad == 0 && secs < 1.0, fmt("1000 triples, %zu mismatches, %.3f s", bad, secs));
}

// ---------------------------------------------------------------------------

// Published closed forms of the baselines and the evolutionary baseline.
std::uint64_t printed_formula(Variant v, const CostParams& p) {
    switch (v) {
        case Variant::RandomAll: return p.n * (p.n - 1) * p.s_g * p.d_t;
        case Variant::RandomTournament: return (p.n - 1) * p.s_g * p.d_t;
        case Variant::EvoBase: return p.n * (p.n - 1) * p.s_g * p.d_t * (1 + p.g);
        default: return 0;
    }
}

void cost_exactness(const CardSet& cards, const Engine& engine) {
    const auto start = Clock::now();
    const auto all_drafts = generate_drafts(cards, 99, Phase::TrainDrafts, 3);
    const Variant variants[] = {Variant::EvoBase,     Variant::Ag,          Variant::AgAll,     Variant::AgWeights,
                                Variant::AgWeightsKd, Variant::AgWeightsKg, Variant::RandomAll, Variant::RandomTournament};
    Rng rng(derive_seed(2024, {2}));
    std::size_t configs = 0, trace_bad = 0, printed_bad = 0;
    for (const auto v : variants) {
        for (int i = 0; i < 20; ++i) {
            TrainerConfig c;
            c.variant = v;
            c.n = is_active_genes_variant(v) ? 2 * (1 + uniform_index(rng, 3)) : 2 + uniform_index(rng, 5);
            c.d_t = 1 + uniform_index(rng, 3);
            c.s_g = 2;
            c.s_r = 1 + static_cast<int>(uniform_index(rng, 4));
            c.tournament_size = 2 + uniform_index(rng, c.n - 1);
            c.tournament_games = 2 * (1 + static_cast<int>(uniform_index(rng, 2)));
            c.seed = rng();
            c.budget = 10'000'000;
            c.elitism = std::min<std::size_t>(2, c.n);
            if (v == Variant::EvoBase) {
                c.g = 1 + uniform_index(rng, 3);
            } else if (v == Variant::AgWeightsKd) {
                c.K = 1 + uniform_index(rng, c.d_t);
                c.g = c.K * (1 + uniform_index(rng, c.d_t / c.K));
            } else if (v == Variant::AgWeightsKg) {
                c.K = 1 + uniform_index(rng, 3);
                c.s_r = static_cast<int>(c.K) * (1 + static_cast<int>(uniform_index(rng, 2)));
                c.g = 1 + uniform_index(rng, c.d_t);
            } else if (is_active_genes_variant(v)) {
                c.g = 1 + uniform_index(rng, c.d_t);
            }
            const auto drafts = std::span(all_drafts).first(c.d_t);
            CostCounter cost;
            const Simulator sim(engine, AgentKind::Random, cost, worker_threads());
            const auto result = train(c, drafts, sim);
            std::uint64_t gens = result.history.generations.size();
            if (v == Variant::EvoBase) gens -= 1;  // the first snapshot is the initial evaluation
            const auto p = cost_params(c, gens);
            ++configs;
            trace_bad += cost.games() != estimate_cost(v, p);
            if (v == Variant::EvoBase || v == Variant::RandomAll || v == Variant::RandomTournament)
                printed_bad += cost.games() != printed_formula(v, p);
        }
    }
    const double secs = seconds_since(start);
    report("cost-exactness", trace_bad == 0 && printed_bad == 0 && secs < 60.0,
           fmt("%zu configs, %zu loop-trace mismatches, %zu printed-formula mismatches, %.2f s", configs, trace_bad,
               printed_bad, secs));
}

// ---------------------------------------------------------------------------

void draft_space() {
    const auto value = count_draft_space(160, 30, 3);
    boost::multiprecision::cpp_int expected = 1;
    for (unsigned t = 0; t < 30; ++t) expected *= 160 * 159 * 158;
    const auto text = value.str();
    const bool ok = value == expected && text.size() == 199 && text.substr(0, 3) == "133";
    report("draft-space", ok, fmt("%s.%se%zu", text.substr(0, 1).c_str(), text.substr(1, 2).c_str(), text.size() - 1));
}

// ---------------------------------------------------------------------------

Deck random_deck(const CardSet& cards, Rng& rng) {
    Deck d{};
    for (auto& id : d) id = static_cast<CardId>(1 + uniform_index(rng, cards.size()));
    return d;
}

std::size_t keyword_failures() {
    const auto cards = tiny_cards();
    const Engine e(cards);
    std::size_t bad = 0;
    auto expect = [&](bool cond) { bad += cond ? 0 : 1; };

    {  // Guard: the only legal attack target in its lane
        auto s = blank_state(e);
        s.enemy().lanes[0].push_back(creature(cards, 14, 0));
        s.enemy().lanes[0].push_back(creature(cards, 7, 0));
        s.me().lanes[0].push_back(creature(cards, 1, 0));
        std::size_t attacks = 0;
        for (const auto& a : e.legal_actions(s))
            if (a.kind == ActionKind::Attack) {
                ++attacks;
                expect(a.target == Target::creature(1, 0, 0));
            }
        expect(attacks == 1);
    }
    {  // Lethal kills on any damage, Ward absorbs one instance
        auto s = blank_state(e);
        s.me().lanes[0].push_back(creature(cards, 2, 0));
        s.enemy().lanes[0].push_back(creature(cards, 1, 0));
        s.enemy().lanes[0][0].defense = 9;
        e.apply(s, Action::attack(0, 0, Target::creature(1, 0, 0)));
        expect(s.enemy().lanes[0].empty());

        auto w = blank_state(e);
        w.me().lanes[0].push_back(creature(cards, 2, 0));
        w.enemy().lanes[0].push_back(creature(cards, 3, 0));
        e.apply(w, Action::attack(0, 0, Target::creature(1, 0, 0)));
        expect(w.enemy().lanes[0].size() == 1 && w.enemy().lanes[0][0].defense == 4 &&
               !w.enemy().lanes[0][0].keywords.has(Keyword::Ward));
    }
    {  // Breakthrough sends excess damage to the face
        auto s = blank_state(e);
        s.me().lanes[0].push_back(creature(cards, 4, 0));
        s.enemy().lanes[0].push_back(creature(cards, 5, 0));
        s.enemy().hp = 10;
        e.apply(s, Action::attack(0, 0, Target::creature(1, 0, 0)));
        expect(s.enemy().hp == 6);
    }
    {  // Drain heals by damage dealt
        auto s = blank_state(e);
        s.me().hp = 20;
        s.me().lanes[0].push_back(creature(cards, 9, 0));
        e.apply(s, Action::attack(0, 0, Target::face(1)));
        expect(s.me().hp == 22 && s.enemy().hp == 28);
    }
    {  // Charge attacks on the summon turn, vanilla does not
        auto s = blank_state(e, 2);
        s.me().hand.push_back(10);
        s.me().hand.push_back(7);
        e.apply(s, Action::summon(10, 0));
        e.apply(s, Action::summon(7, 1));
        const auto actions = e.legal_actions(s);
        auto has = [&](const Action& a) { return std::find(actions.begin(), actions.end(), a) != actions.end(); };
        expect(has(Action::attack(0, 0, Target::face(1))));
        expect(!has(Action::attack(1, 0, Target::face(1))));
    }
    return bad;
}

void engine_properties(const CardSet& cards, const Engine& engine) {
    const auto start = Clock::now();
    Rng rng(derive_seed(2024, {3}));
    std::size_t violations = 0, wins0 = 0, wins1 = 0, draws = 0;
    for (int g = 0; g < 10'000; ++g) {
        const auto d0 = random_deck(cards, rng), d1 = random_deck(cards, rng);
        const auto k1 = g % 4 == 0 ? AgentKind::Greedy : AgentKind::Random;
        const auto r = checked_playout(engine, d0, d1, AgentKind::Random, k1, rng());
        violations += r.violations.empty() ? 0 : 1;
        if (r.turns > kTurnCap + 1) ++violations;
        (r.outcome == Outcome::WinP0 ? wins0 : r.outcome == Outcome::WinP1 ? wins1 : draws)++;
    }
    const auto kw = keyword_failures();

    std::size_t replay_bad = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto d0 = random_deck(cards, rng), d1 = random_deck(cards, rng);
        const Agent a{AgentKind::Random, seed}, b{AgentKind::Greedy, seed + 1};
        std::stringstream log;
        JsonLinesGameLog writer(log, d0, d1, seed, engine);
        const auto outcome = simulate_game(engine, d0, d1, a, b, seed, &writer);
        writer.finish(outcome);
        const auto rep = replay_game_log(engine, log);
        replay_bad += !rep.consistent || rep.outcome != outcome || simulate_game(engine, d0, d1, a, b, seed) != outcome;
    }
    const double secs = seconds_since(start);
    report("engine-properties", violations == 0 && kw == 0 && replay_bad == 0 && secs < 60.0,
           fmt("10000 playouts (%zu/%zu/%zu), %zu invariant failures, %zu keyword failures, %zu replay failures, %.1f s",
               wins0, wins1, draws, violations, kw, replay_bad, secs));
}

// ---------------------------------------------------------------------------

struct VariantRuns {
    Variant variant;
    std::vector<TrainResult> runs;
    std::vector<std::vector<Draft>> drafts;
    std::vector<double> eval;
};

double mean(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size()); }

void directional_and_generalization(const CardSet& cards, const Engine& engine) {
    const auto start = Clock::now();
    const std::string dir = ARENA_DATA_DIR;
    const OrderingPolicy orderings[] = {load_ordering_file(dir + "/placeholder_ordering_a.txt", cards.size()),
                                        load_ordering_file(dir + "/placeholder_ordering_b.txt", cards.size())};
    const auto pool = make_opponent_pool(orderings, 3, cards.size(), 7001);
    const auto held_out = generate_drafts(cards, 7002, Phase::EvalDrafts, 50);
    constexpr int kGames = 10;

    std::vector<VariantRuns> all;
    for (const auto v : {Variant::AgWeights, Variant::Ag, Variant::AgAll, Variant::EvoBase, Variant::RandomAll,
                         Variant::RandomTournament}) {
        VariantRuns vr{v, {}, {}, {}};
        for (std::uint64_t s = 1; s <= 5; ++s) {
            TrainerConfig c;
            c.variant = v;
            c.n = 10;
            c.d_t = 30;
            c.budget = 100'000;
            c.seed = s;
            c.threads = worker_threads();
            auto drafts = training_drafts(cards, c);
            CostCounter cost;
            const Simulator sim(engine, AgentKind::Random, cost, c.threads);
            vr.runs.push_back(train(c, drafts, sim));
            vr.drafts.push_back(std::move(drafts));
            CostCounter eval_cost;
            const Simulator eval_sim(engine, AgentKind::Random, eval_cost, c.threads);
            // A run contributes its top five final individuals; a baseline has only its winner.
            std::vector<Genome> players;
            for (const auto& ind : vr.runs.back().history.generations.back().top) players.push_back(ind.genome);
            vr.eval.push_back(pool_win_rate(eval_sim, players, pool, held_out, kGames, 7003));
        }
        std::printf("      %-18s pooled %.2f%%  (runs:", std::string(to_string(v)).c_str(), mean(vr.eval));
        for (double x : vr.eval) std::printf(" %.2f", x);
        std::printf(")\n");
        all.push_back(std::move(vr));
    }
    auto pooled = [&](Variant v) {
        for (const auto& vr : all)
            if (vr.variant == v) return mean(vr.eval);
        return 0.0;
    };
    const double agw = pooled(Variant::AgWeights), ag = pooled(Variant::Ag), agall = pooled(Variant::AgAll);
    const double rall = pooled(Variant::RandomAll), rtour = pooled(Variant::RandomTournament);
    constexpr double kGap = 0.5;
    const bool ok = agw - ag >= kGap && ag - rall >= kGap && ag - rtour >= kGap && agw - agall >= kGap;
    report("directional-replication", ok,
           fmt("AG_weights %.2f, AG %.2f, AG_all %.2f, Random_all %.2f, Random_tournament %.2f (need gaps >= %.1f pp), %.0f s",
               agw, ag, agall, rall, rtour, kGap, seconds_since(start)));

    // Budget-matched baselines: the largest n whose cost fits the same budget. Informational.
    {
        CostCounter cost;
        const Simulator sim(engine, AgentKind::Random, cost, worker_threads());
        std::vector<double> wr_all, wr_tour;
        for (std::uint64_t s = 1; s <= 5; ++s) {
            TrainerConfig c;
            c.d_t = 30;
            c.seed = s;
            const auto drafts = training_drafts(cards, c);
            std::size_t n_all = 2, n_tour = 2;
            while ((n_all + 1) * n_all * 2 * 30 <= 100'000) ++n_all;
            while (n_tour * 2 * 30 <= 100'000) ++n_tour;
            const Genome a = random_all_baseline(sim, n_all, drafts, 2, s).values();
            const Genome t = random_tournament_baseline(sim, n_tour, drafts, 2, s).values();
            wr_all.push_back(pool_win_rate(sim, std::span(&a, 1), pool, held_out, kGames, 7003));
            wr_tour.push_back(pool_win_rate(sim, std::span(&t, 1), pool, held_out, kGames, 7003));
        }
        std::printf("      info: budget-matched Random_all %.2f%%, Random_tournament %.2f%%\n", mean(wr_all), mean(wr_tour));
    }

    // Generalization: checkpoint train-vs-eval win rates pooled over the five seeds.
    const auto gstart = Clock::now();
    auto correlate = [&](Variant v, std::vector<double>& shortfalls) {
        std::vector<double> train_wr, eval_wr;
        for (const auto& vr : all) {
            if (vr.variant != v) continue;
            for (std::size_t r = 0; r < vr.runs.size(); ++r) {
                CostCounter cost;
                const Simulator sim(engine, AgentKind::Random, cost, worker_threads());
                const auto res = correlation_experiment(sim, vr.runs[r].history, vr.drafts[r], held_out, pool, kGames, 7004);
                for (const auto& p : res.points) {
                    train_wr.push_back(p.train_win_rate);
                    eval_wr.push_back(p.eval_win_rate);
                }
                shortfalls.push_back(res.points.back().train_win_rate - res.points.back().eval_win_rate);
            }
        }
        return pearson(train_wr, eval_wr);
    };
    std::vector<double> short_agw, short_evo;
    const auto r_agw = correlate(Variant::AgWeights, short_agw);
    const auto r_evo = correlate(Variant::EvoBase, short_evo);
    const bool gen_ok = r_agw && *r_agw > 0.0 && mean(short_evo) > mean(short_agw);
    report("generalization-direction", gen_ok,
           fmt("AG_weights r = %.3f (Evo_base r = %.3f); final shortfall Evo_base %.2f pp vs AG_weights %.2f pp, %.0f s",
               r_agw.value_or(0.0), r_evo.value_or(0.0), mean(short_evo), mean(short_agw), seconds_since(gstart)));
}

// ---------------------------------------------------------------------------

void agent_sanity(const CardSet& cards, const Engine& engine) {
    Rng rng(derive_seed(2024, {4}));
    const auto drafts = generate_drafts(cards, 2024, Phase::EvalDrafts, 250);
    std::int64_t greedy_halves = 0;
    int games = 0;
    for (std::size_t k = 0; k < drafts.size(); ++k) {
        Genome ga(cards.size()), gb(cards.size());
        for (Eigen::Index i = 0; i < ga.size(); ++i) {
            ga[i] = uniform01(rng);
            gb[i] = uniform01(rng);
        }
        const Deck a = build_deck(ga, drafts[k]), b = build_deck(gb, drafts[k]);
        const std::uint64_t seed = derive_seed(2024, Phase::Evaluation, {k});
        const Agent greedy{AgentKind::Greedy, seed}, random{AgentKind::Random, seed};
        // Greedy takes each deck and each seat once against the other deck.
        for (const auto& [d0, d1, greedy_first] : {std::tuple{&a, &b, true}, std::tuple{&b, &a, true},
                                                   std::tuple{&a, &b, false}, std::tuple{&b, &a, false}}) {
            const auto o = greedy_first ? simulate_game(engine, *d0, *d1, greedy, random, seed)
                                        : simulate_game(engine, *d0, *d1, random, greedy, seed);
            const Outcome won = greedy_first ? Outcome::WinP0 : Outcome::WinP1;
            greedy_halves += o == won ? 2 : (o == Outcome::Draw ? 1 : 0);
            ++games;
        }
    }
    const double rate = 50.0 * static_cast<double>(greedy_halves) / games;
    report("agent-sanity", rate >= 55.0, fmt("greedy %.1f%% over %d mirrored games", rate, games));
}

void throughput(const CardSet& cards, const Engine& engine) {
    Rng rng(derive_seed(2024, {5}));
    std::vector<Deck> decks;
    for (int i = 0; i < 200; ++i) decks.push_back(random_deck(cards, rng));
    std::vector<Pairing> pairings;
    for (std::size_t i = 0; i + 1 < decks.size(); i += 2) pairings.push_back({&decks[i], &decks[i + 1], 200, i});
    CostCounter cost;
    const Simulator sim(engine, AgentKind::Random, cost, 1);
    const auto start = Clock::now();
    sim.play(pairings);
    const double secs = seconds_since(start);
    const double rate = static_cast<double>(cost.games()) / secs;
    report("throughput", rate >= 1000.0, fmt("%.0f random-agent games/s on one core", rate));
}

}  // namespace

int main() {
    const auto cards = generate_card_set(kDefaultCardSeed, kDefaultCardCount);
    const Engine engine(cards);
    merge_exactness();
    cost_exactness(cards, engine);
    draft_space();
    engine_properties(cards, engine);
    agent_sanity(cards, engine);
    throughput(cards, engine);
    directional_and_generalization(cards, engine);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
