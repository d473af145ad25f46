#include "arena/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "arena/baselines.hpp"
#include "arena/cardset.hpp"
#include "arena/draft.hpp"
#include "arena/evolution.hpp"
#include "arena/game_log.hpp"
#include "arena/harness.hpp"
#include "arena/run.hpp"

namespace arena {

namespace {

namespace fs = std::filesystem;

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    return out;
}

/// Empty path selects the built-in default set.
CardSet load_cards(const std::string& path) {
    return path.empty() ? generate_card_set(kDefaultCardSeed, kDefaultCardCount) : load_card_set_file(path);
}

AgentKind agent_from(const std::string& name) {
    const auto kind = parse_agent_kind(name);
    if (!kind) throw CLI::ValidationError("--player", "expected random or greedy, got '" + name + "'");
    return *kind;
}

/// Flat `key = value` lines ('#' comments) become `--key value` arguments,
/// inserted after the subcommand unless the key was also given as a flag.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (!path || args.empty()) return args;

    auto given = [&](const std::string& key) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
        });
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::istringstream in(read_text(*path));
    std::vector<std::string> injected;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError(*path + ":" + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key == "config" || given(key)) continue;
        injected.push_back("--" + key);
        injected.push_back(value);
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

std::vector<OrderingPolicy> load_orderings(const std::vector<std::string>& paths, const CardSet& cards) {
    std::vector<OrderingPolicy> out;
    for (const auto& p : paths) out.push_back(parse_ordering(read_text(p), cards.size()));
    return out;
}

Deck load_deck(const std::string& path) {
    auto text = read_text(path);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<long> ids;
    std::string tok;
    while (in >> tok) {
        if (tok.front() == '#') {
            std::getline(in, tok);
            continue;
        }
        try {
            ids.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw DataError(path + ": bad card id '" + tok + "'");
        }
    }
    if (ids.size() != kDeckSize)
        throw DataError(path + ": expected " + std::to_string(kDeckSize) + " card ids, got " + std::to_string(ids.size()));
    Deck deck{};
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 1 || ids[i] > 65535) throw DataError(path + ": card id out of range");
        deck[i] = static_cast<CardId>(ids[i]);
    }
    return deck;
}

/// A policy file, a run directory (its best.json) or an ordering file.
LabeledPolicy load_labeled_policy(const std::string& path, const CardSet& cards) {
    const fs::path p(path);
    if (fs::is_directory(p)) return {p.filename().empty() ? p.parent_path().filename().string() : p.filename().string(),
                                     parse_policy(read_text((p / "best.json").string()), cards).values()};
    return {p.stem().string(), parse_policy(read_text(path), cards).values()};
}

struct RunContext {
    CardSet cards;
    LoadedRun run;
};

RunContext open_run(const std::string& dir, const std::string& cards_override) {
    if (!fs::is_directory(dir)) throw DataError("run directory '" + dir + "' does not exist");
    std::string cards_path = cards_override;
    if (cards_path.empty()) {
        const auto cfg = nlohmann::json::parse(read_text((fs::path(dir) / "config.json").string()));
        cards_path = cfg.value("cards", "");
    }
    auto cards = load_cards(cards_path);
    auto run = load_run_dir(dir, cards);
    return {std::move(cards), std::move(run)};
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evolutionary draft policies for a two-lane collectible card game"};
    app.name("arena");
    app.require_subcommand(1);

    // --- cards
    auto* cards_cmd = app.add_subcommand("cards", "Generate, check or describe a card set");
    std::uint64_t card_seed = kDefaultCardSeed;
    std::size_t card_count = kDefaultCardCount;
    std::string cards_out, cards_check;
    cards_cmd->add_option("--seed", card_seed, "Generator seed")->capture_default_str();
    cards_cmd->add_option("--size", card_count, "Number of cards")->capture_default_str();
    cards_cmd->add_option("--out", cards_out, "Write the set here instead of stdout");
    cards_cmd->add_option("--check", cards_check, "Validate an existing card file")->excludes("--out");

    // --- train
    auto* train_cmd = app.add_subcommand("train", "Train a draft policy");
    TrainerConfig cfg;
    std::string variant = std::string(to_string(cfg.variant)), player = "random", train_cards, train_out, config_path;
    int lanes = cfg.lanes;
    train_cmd->add_option("--config", config_path, "Flat key = value file; flags override it");
    train_cmd->add_option("--variant", variant,
                          "evo_base|ag|ag_all|ag_weights|ag_weights_kd|ag_weights_kg|random_all|random_tournament")
        ->capture_default_str();
    train_cmd->add_option("--n", cfg.n, "Population size")->capture_default_str();
    train_cmd->add_option("--d_t", cfg.d_t, "Training drafts")->capture_default_str();
    train_cmd->add_option("--g", cfg.g, "Generations (0: d_t, or until budget for evo_base)")->capture_default_str();
    train_cmd->add_option("--s_g", cfg.s_g, "Games per pairing per draft (even)")->capture_default_str();
    train_cmd->add_option("--s_r", cfg.s_r, "Scoring rounds")->capture_default_str();
    train_cmd->add_option("--tournament_size", cfg.tournament_size)->capture_default_str();
    train_cmd->add_option("--tournament_games", cfg.tournament_games)->capture_default_str();
    train_cmd->add_option("--mutation_rate", cfg.mutation_rate)->capture_default_str();
    train_cmd->add_option("--elitism", cfg.elitism)->capture_default_str();
    train_cmd->add_option("--merge_weight", cfg.merge_weight)->capture_default_str();
    train_cmd->add_option("--K", cfg.K, "Draft batch (kd) or generation split (kg)")->capture_default_str();
    train_cmd->add_option("--budget", cfg.budget, "Maximum simulated games")->capture_default_str();
    train_cmd->add_option("--seed", cfg.seed)->capture_default_str();
    train_cmd->add_option("--player", player, "random|greedy")->capture_default_str();
    train_cmd->add_option("--lanes", lanes)->capture_default_str()->check(CLI::Range(1, 2));
    train_cmd->add_option("--threads", cfg.threads)->capture_default_str();
    train_cmd->add_option("--top_k", cfg.top_k, "Genomes stored per generation")->capture_default_str();
    train_cmd->add_option("--cards", train_cards, "Card file (default: built-in set)");
    train_cmd->add_option("--out", train_out, "Run directory")->required();

    // Options shared by the evaluation commands.
    struct EvalOpts {
        std::string cards, player, out = ".";
        std::uint64_t seed = 1;
        int games = 10;
        std::size_t drafts = 50;
        unsigned threads = 1;
        std::vector<std::string> orderings;
        std::size_t random = 3;
    };
    auto add_eval_opts = [](CLI::App* cmd, EvalOpts& o) {
        cmd->add_option("--cards", o.cards, "Card file (default: the run's, or the built-in set)");
        cmd->add_option("--player", o.player, "random|greedy (default: the run's, or random)");
        cmd->add_option("--seed", o.seed)->capture_default_str();
        cmd->add_option("--games", o.games, "Games per pairing per draft (even)")->capture_default_str();
        cmd->add_option("--threads", o.threads)->capture_default_str();
        cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    };
    auto add_pool_opts = [](CLI::App* cmd, EvalOpts& o) {
        cmd->add_option("--orderings", o.orderings, "Ordering files added to the opponent pool");
        cmd->add_option("--random", o.random, "Random genomes in the opponent pool")->capture_default_str();
    };

    // --- eval
    auto* eval_cmd = app.add_subcommand("eval", "Round-robin matchup table");
    EvalOpts eval_opts;
    eval_opts.drafts = 500;
    eval_opts.games = 20;
    std::vector<std::string> eval_policies, eval_orderings;
    std::size_t reps = 5;
    add_eval_opts(eval_cmd, eval_opts);
    eval_cmd->add_option("--policies", eval_policies, "Policy files or run directories");
    eval_cmd->add_option("--ordering-policies", eval_orderings, "Ordering files evaluated as policies");
    eval_cmd->add_option("--drafts", eval_opts.drafts, "Evaluation drafts per repetition")->capture_default_str();
    eval_cmd->add_option("--reps", reps, "Repetitions")->capture_default_str();

    // --- curve
    auto* curve_cmd = app.add_subcommand("curve", "Win rate against the opponent pool per checkpoint");
    EvalOpts curve_opts;
    std::string curve_run;
    add_eval_opts(curve_cmd, curve_opts);
    add_pool_opts(curve_cmd, curve_opts);
    curve_cmd->add_option("--run", curve_run, "Run directory")->required();
    curve_cmd->add_option("--drafts", curve_opts.drafts, "Evaluation drafts")->capture_default_str();

    // --- correlate
    auto* corr_cmd = app.add_subcommand("correlate", "Training versus held-out win rates per checkpoint");
    EvalOpts corr_opts;
    std::string corr_run;
    add_eval_opts(corr_cmd, corr_opts);
    add_pool_opts(corr_cmd, corr_opts);
    corr_cmd->add_option("--run", corr_run, "Run directory")->required();
    corr_cmd->add_option("--drafts", corr_opts.drafts, "Held-out drafts")->capture_default_str();

    // --- champions
    auto* champ_cmd = app.add_subcommand("champions", "Checkpoint champions against every generation");
    EvalOpts champ_opts;
    std::string champ_run;
    std::size_t stride = 10;
    std::size_t champ_drafts = 0;
    add_eval_opts(champ_cmd, champ_opts);
    champ_cmd->add_option("--run", champ_run, "Run directory")->required();
    champ_cmd->add_option("--stride", stride, "Generations between champions")->capture_default_str()->check(
        CLI::PositiveNumber);
    champ_cmd->add_option("--drafts", champ_drafts, "Use only the first N training drafts (0: all)")
        ->capture_default_str();

    // --- draft-space
    auto* space_cmd = app.add_subcommand("draft-space", "Exact number of distinct drafts");
    unsigned space_size = 160, space_turns = 30, space_choices = 3;
    space_cmd->add_option("--size", space_size)->capture_default_str();
    space_cmd->add_option("--turns", space_turns)->capture_default_str();
    space_cmd->add_option("--choices", space_choices)->capture_default_str();

    // --- simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Play one game, or check a game log");
    std::string deck0_path, deck1_path, sim_cards, sim_player = "random", replay_path;
    std::optional<std::string> log_path;
    std::uint64_t sim_seed = 1;
    int sim_lanes = 2;
    sim_cmd->add_option("--deck0", deck0_path, "30 card ids");
    sim_cmd->add_option("--deck1", deck1_path, "30 card ids");
    sim_cmd->add_option("--seed", sim_seed)->capture_default_str();
    sim_cmd->add_option("--player", sim_player, "random|greedy")->capture_default_str();
    sim_cmd->add_option("--lanes", sim_lanes)->capture_default_str()->check(CLI::Range(1, 2));
    sim_cmd->add_option("--cards", sim_cards, "Card file (default: built-in set)");
    sim_cmd->add_option("--log", log_path, "Write a JSON-lines game log (default: stdout)")->expected(0, 1)->default_str("-");
    sim_cmd->add_option("--replay", replay_path, "Verify a game log instead of playing")->excludes("--deck0", "--deck1");

    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*cards_cmd) {
            if (!cards_check.empty()) {
                const auto set = load_card_set_file(cards_check);
                const auto problems = validate(set);
                for (const auto& v : problems) err << (v.card ? "card " + std::to_string(*v.card) + ": " : std::string()) << v.message << '\n';
                out << set.size() << " cards, fingerprint " << set.fingerprint() << '\n';
                return problems.empty() ? kExitOk : kExitData;
            }
            const auto set = generate_card_set(card_seed, card_count);
            if (cards_out.empty()) {
                out << serialize(set);
            } else {
                open_out(cards_out) << serialize(set);
                out << "wrote " << set.size() << " cards to " << cards_out << '\n';
            }
            return kExitOk;
        }

        if (*train_cmd) {
            const auto v = parse_variant(variant);
            if (!v) throw ConfigError("unknown variant '" + variant + "'");
            cfg.variant = *v;
            cfg.player = agent_from(player);
            cfg.lanes = static_cast<std::uint8_t>(lanes);
            cfg.validate();
            const auto cards = load_cards(train_cards);
            const Engine engine(cards, Rules{cfg.lanes});
            CostCounter cost;
            const Simulator sim(engine, cfg.player, cost, cfg.threads);
            const auto drafts = training_drafts(cards, cfg);
            const auto result = train(cfg, drafts, sim);
            write_run_dir(train_out, cfg, train_cards, cards, drafts, result);
            out << "cost: " << cost.games() << '\n';
            out << "generations: " << result.history.generations.size() << '\n';
            out << "best: " << (fs::path(train_out) / "best.json").string() << '\n';
            return kExitOk;
        }

        if (*eval_cmd) {
            const auto cards = load_cards(eval_opts.cards);
            std::vector<LabeledPolicy> policies;
            for (const auto& p : eval_policies) policies.push_back(load_labeled_policy(p, cards));
            for (const auto& p : eval_orderings)
                policies.push_back({fs::path(p).stem().string(),
                                    ordering_to_policy(parse_ordering(read_text(p), cards.size())).values()});
            if (policies.size() < 2) throw CLI::ValidationError("eval", "needs at least two policies");
            const Engine engine(cards);
            CostCounter cost;
            const Simulator sim(engine, agent_from(eval_opts.player.empty() ? "random" : eval_opts.player), cost,
                                eval_opts.threads);
            const auto table = round_robin_eval(sim, policies, eval_opts.drafts, eval_opts.games, reps, eval_opts.seed);
            {
                auto file = open_out(fs::path(eval_opts.out) / "matchup.csv");
                write_matchup_csv(file, table);
            }
            out << format_matchup_table(table);
            out << "cost: " << cost.games() << '\n';
            return kExitOk;
        }

        auto pool_for = [](const EvalOpts& o, const CardSet& cards) {
            const auto orderings = load_orderings(o.orderings, cards);
            return make_opponent_pool(orderings, o.random, cards.size(), o.seed);
        };

        if (*curve_cmd || *corr_cmd) {
            const auto& o = *curve_cmd ? curve_opts : corr_opts;
            const auto ctx = open_run(*curve_cmd ? curve_run : corr_run, o.cards);
            const Engine engine(ctx.cards, Rules{ctx.run.config.lanes});
            CostCounter cost;
            const Simulator sim(engine, o.player.empty() ? ctx.run.config.player : agent_from(o.player), cost, o.threads);
            const auto pool = pool_for(o, ctx.cards);
            if (pool.empty()) throw CLI::ValidationError("--random", "the opponent pool is empty");
            const auto eval_drafts = generate_drafts(ctx.cards, o.seed, Phase::EvalDrafts, o.drafts);
            if (*curve_cmd) {
                const auto curve = evolution_curve(sim, ctx.run.history, eval_drafts, pool, o.games, o.seed);
                {
                auto file = open_out(fs::path(o.out) / "curve.csv");
                write_curve_csv(file, curve);
            }
                for (const auto& pt : curve) out << pt.cost << ' ' << pt.win_rate << '\n';
            } else {
                const auto result = correlation_experiment(sim, ctx.run.history, ctx.run.drafts, eval_drafts, pool,
                                                           o.games, o.seed);
                {
                auto file = open_out(fs::path(o.out) / "correlation.csv");
                write_correlation_csv(file, result);
            }
                out << "pearson r: ";
                if (result.pearson)
                    out << *result.pearson << '\n';
                else
                    out << "undefined (zero variance)\n";
            }
            out << "cost: " << cost.games() << '\n';
            return kExitOk;
        }

        if (*champ_cmd) {
            const auto ctx = open_run(champ_run, champ_opts.cards);
            const Engine engine(ctx.cards, Rules{ctx.run.config.lanes});
            CostCounter cost;
            const Simulator sim(engine, champ_opts.player.empty() ? ctx.run.config.player : agent_from(champ_opts.player),
                                cost, champ_opts.threads);
            std::span<const Draft> drafts(ctx.run.drafts);
            if (champ_drafts > 0 && champ_drafts < drafts.size()) drafts = drafts.first(champ_drafts);
            const auto result = champions_analysis(sim, ctx.run.history, drafts, champ_opts.games, stride, champ_opts.seed);
            {
                auto file = open_out(fs::path(champ_opts.out) / "champions.csv");
                write_champions_csv(file, result);
            }
            out << result.champion_generations.size() << " champions x " << result.generations.size()
                << " generations\ncost: " << cost.games() << '\n';
            return kExitOk;
        }

        if (*space_cmd) {
            out << count_draft_space(space_size, space_turns, space_choices) << '\n';
            return kExitOk;
        }

        if (*sim_cmd) {
            const auto cards = load_cards(sim_cards);
            const Engine engine(cards, Rules{static_cast<std::uint8_t>(sim_lanes)});
            if (!replay_path.empty()) {
                std::ifstream in(replay_path);
                if (!in) throw DataError("cannot open '" + replay_path + "'");
                const auto report = replay_game_log(engine, in);
                if (!report.consistent) {
                    err << "replay mismatch: " << report.error << '\n';
                    return kExitData;
                }
                out << "replay consistent: " << report.steps << " actions, outcome "
                    << (report.outcome ? to_string(*report.outcome) : "none") << '\n';
                return kExitOk;
            }
            if (deck0_path.empty() || deck1_path.empty())
                throw CLI::ValidationError("simulate", "--deck0 and --deck1 are required");
            const auto deck0 = load_deck(deck0_path), deck1 = load_deck(deck1_path);
            const auto kind = agent_from(sim_player);
            const Agent a0{kind, derive_seed(sim_seed, {0})}, a1{kind, derive_seed(sim_seed, {1})};
            Outcome outcome;
            if (log_path) {
                std::ofstream file;
                std::ostream* log_out = &out;
                if (*log_path != "-") {
                    file = open_out(*log_path);
                    log_out = &file;
                }
                JsonLinesGameLog log(*log_out, deck0, deck1, sim_seed, engine);
                outcome = simulate_game(engine, deck0, deck1, a0, a1, sim_seed, &log);
                log.finish(outcome);
                if (*log_path != "-") out << "outcome: " << to_string(outcome) << '\n';
            } else {
                outcome = simulate_game(engine, deck0, deck1, a0, a1, sim_seed, nullptr);
                out << "outcome: " << to_string(outcome) << '\n';
            }
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace arena
