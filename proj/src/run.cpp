#include "arena/run.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "arena/baselines.hpp"

namespace arena {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::vector<Draft> training_drafts(const CardSet& cards, const TrainerConfig& config) {
    return generate_drafts(cards, config.seed, Phase::TrainDrafts, config.d_t);
}

TrainResult train(const TrainerConfig& config, std::span<const Draft> drafts, const Simulator& sim) {
    config.validate();
    if (config.variant == Variant::EvoBase) return evo_base_train(config, drafts, sim);
    if (is_active_genes_variant(config.variant)) return ag_train(config, drafts, sim);

    const auto policy = config.variant == Variant::RandomAll
                            ? random_all_baseline(sim, config.n, drafts, config.s_g, config.seed)
                            : random_tournament_baseline(sim, config.n, drafts, config.s_g, config.seed);
    TrainResult result;
    result.best = policy.values();
    result.population.push_back({policy.values(), 0});
    GenerationSnapshot snap;
    snap.cost = sim.cost().games();
    for (std::size_t d = 0; d < drafts.size(); ++d) snap.draft_ids.push_back(d);
    snap.top.push_back({policy.values(), 0});
    result.history.generations.push_back(std::move(snap));
    return result;
}

ordered_json config_to_json(const TrainerConfig& c) {
    ordered_json j;
    j["variant"] = std::string(to_string(c.variant));
    j["n"] = c.n;
    j["d_t"] = c.d_t;
    j["g"] = c.g;
    j["s_g"] = c.s_g;
    j["s_r"] = c.s_r;
    j["tournament_size"] = c.tournament_size;
    j["tournament_games"] = c.tournament_games;
    j["mutation_rate"] = c.mutation_rate;
    j["elitism"] = c.elitism;
    j["merge_weight"] = c.merge_weight;
    j["K"] = c.K;
    j["budget"] = c.budget;
    j["seed"] = c.seed;
    j["player"] = std::string(to_string(c.player));
    j["lanes"] = c.lanes;
    j["threads"] = c.threads;
    j["top_k"] = c.top_k;
    return j;
}

TrainerConfig config_from_json(const json& j) {
    TrainerConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "variant") {
            const auto v = parse_variant(value.get<std::string>());
            if (!v) throw ConfigError("unknown variant '" + value.get<std::string>() + "'");
            c.variant = *v;
        } else if (key == "player") {
            const auto p = parse_agent_kind(value.get<std::string>());
            if (!p) throw ConfigError("unknown player '" + value.get<std::string>() + "'");
            c.player = *p;
        } else if (key == "n") c.n = value.get<std::size_t>();
        else if (key == "d_t") c.d_t = value.get<std::size_t>();
        else if (key == "g") c.g = value.get<std::size_t>();
        else if (key == "s_g") c.s_g = value.get<int>();
        else if (key == "s_r") c.s_r = value.get<int>();
        else if (key == "tournament_size") c.tournament_size = value.get<std::size_t>();
        else if (key == "tournament_games") c.tournament_games = value.get<int>();
        else if (key == "mutation_rate") c.mutation_rate = value.get<double>();
        else if (key == "elitism") c.elitism = value.get<std::size_t>();
        else if (key == "merge_weight") c.merge_weight = value.get<double>();
        else if (key == "K") c.K = value.get<std::size_t>();
        else if (key == "budget") c.budget = value.get<std::uint64_t>();
        else if (key == "seed") c.seed = value.get<std::uint64_t>();
        else if (key == "lanes") c.lanes = value.get<std::uint8_t>();
        else if (key == "threads") c.threads = value.get<unsigned>();
        else if (key == "top_k") c.top_k = value.get<std::size_t>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string gen_file_name(std::size_t generation) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "gen_%04zu.json", generation);
    return buf;
}

ordered_json genome_json(const Genome& g) { return ordered_json(std::vector<double>(g.begin(), g.end())); }

Genome genome_from(const json& j, std::size_t genes) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != genes) throw std::runtime_error("genome length does not match the card set");
    return Eigen::Map<const Genome>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

void write_run_dir(const fs::path& dir, const TrainerConfig& config, const std::string& cards_path,
                   const CardSet& cards, std::span<const Draft> drafts, const TrainResult& result) {
    fs::create_directories(dir);
    auto cfg = config_to_json(config);
    cfg["cards"] = cards_path;
    cfg["card_fingerprint"] = cards.fingerprint();
    write_file(dir / "config.json", cfg.dump(2) + "\n");
    write_file(dir / "drafts.txt", serialize_drafts(drafts));

    std::ostringstream curve;
    curve << "generation,cost,best_score\n";
    for (const auto& snap : result.history.generations) {
        ordered_json j;
        j["generation"] = snap.generation;
        j["cost"] = snap.cost;
        j["draft_ids"] = snap.draft_ids;
        j["active_fraction"] = snap.active_fraction;
        auto& top = j["top"] = ordered_json::array();
        for (const auto& ind : snap.top) top.push_back({{"score", ind.score}, {"values", genome_json(ind.genome)}});
        write_file(dir / gen_file_name(snap.generation), j.dump(1) + "\n");
        curve << snap.generation << ',' << snap.cost << ',' << (snap.top.empty() ? 0 : snap.top.front().score) << '\n';
    }
    write_file(dir / "curve.csv", curve.str());
    write_file(dir / "best.json", serialize_policy(DraftPolicy(result.best), cards));
}

LoadedRun load_run_dir(const fs::path& dir, const CardSet& cards) {
    if (!fs::is_directory(dir)) throw std::runtime_error("run directory '" + dir.string() + "' does not exist");
    LoadedRun run;
    auto cfg = json::parse(read_file(dir / "config.json"));
    if (cfg.value("card_fingerprint", cards.fingerprint()) != cards.fingerprint())
        throw std::runtime_error("run was trained on a different card set");
    run.cards_path = cfg.value("cards", "");
    cfg.erase("cards");
    cfg.erase("card_fingerprint");
    run.config = config_from_json(cfg);
    run.drafts = parse_drafts(read_file(dir / "drafts.txt"), cards);

    std::vector<fs::path> gens;
    static const std::regex pattern(R"(gen_\d{4,}\.json)");
    for (const auto& entry : fs::directory_iterator(dir))
        if (std::regex_match(entry.path().filename().string(), pattern)) gens.push_back(entry.path());
    if (gens.empty()) throw std::runtime_error("run directory has no gen_*.json files");
    std::sort(gens.begin(), gens.end());
    for (const auto& path : gens) {
        const auto j = json::parse(read_file(path));
        GenerationSnapshot snap;
        snap.generation = j.at("generation").get<std::size_t>();
        snap.cost = j.at("cost").get<std::uint64_t>();
        snap.draft_ids = j.at("draft_ids").get<std::vector<std::size_t>>();
        snap.active_fraction = j.at("active_fraction").get<double>();
        for (const auto& ind : j.at("top")) snap.top.push_back({genome_from(ind.at("values"), cards.size()), ind.at("score").get<std::int64_t>()});
        run.history.generations.push_back(std::move(snap));
    }
    std::sort(run.history.generations.begin(), run.history.generations.end(),
              [](const auto& a, const auto& b) { return a.generation < b.generation; });
    run.best = parse_policy(read_file(dir / "best.json"), cards);
    return run;
}

}  // namespace arena
