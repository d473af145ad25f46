#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/cardset.hpp"
#include "arena/evolution.hpp"

namespace arena {

/// Training drafts of a run: d_t drafts from (seed, TrainDrafts).
std::vector<Draft> training_drafts(const CardSet& cards, const TrainerConfig& config);

/// Runs any variant. Baselines yield a one-snapshot history holding the winner.
TrainResult train(const TrainerConfig& config, std::span<const Draft> drafts, const Simulator& sim);

nlohmann::ordered_json config_to_json(const TrainerConfig& config);
/// Unknown keys are rejected; missing keys keep their defaults.
TrainerConfig config_from_json(const nlohmann::json& j);

/// Run directory layout:
///   config.json     every TrainerConfig field plus the card-set path and fingerprint
///   drafts.txt      training drafts
///   gen_XXXX.json   one per snapshot: generation, cost, draft ids, top genomes
///   curve.csv       generation, cost, best_score
///   best.json       best policy
void write_run_dir(const std::filesystem::path& dir, const TrainerConfig& config, const std::string& cards_path,
                   const CardSet& cards, std::span<const Draft> drafts, const TrainResult& result);

struct LoadedRun {
    TrainerConfig config;
    std::string cards_path;
    std::vector<Draft> drafts;
    RunHistory history;
    DraftPolicy best;
};

/// Throws std::runtime_error on missing or inconsistent files.
LoadedRun load_run_dir(const std::filesystem::path& dir, const CardSet& cards);

}  // namespace arena
