#include "arena/game_log.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace arena {

namespace {

using nlohmann::json;

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json target_json(const Target& t) {
    switch (t.kind) {
        case Target::Kind::None: return nullptr;
        case Target::Kind::Face: return {{"kind", "face"}, {"owner", t.owner}};
        case Target::Kind::Creature:
            return {{"kind", "creature"}, {"owner", t.owner}, {"lane", t.lane}, {"slot", t.slot}};
    }
    return nullptr;
}

Target target_from(const json& j) {
    if (j.is_null()) return {};
    const auto owner = j.at("owner").get<std::uint8_t>();
    if (j.at("kind") == "face") return Target::face(owner);
    return Target::creature(owner, j.at("lane").get<std::uint8_t>(), j.at("slot").get<std::uint8_t>());
}

json action_json(const Action& a) {
    static constexpr const char* kNames[] = {"pass", "summon", "use", "attack"};
    return {{"kind", kNames[static_cast<int>(a.kind)]},
            {"card", a.card},
            {"lane", a.lane},
            {"slot", a.slot},
            {"target", target_json(a.target)}};
}

Action action_from(const json& j) {
    Action a;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "pass") return Action::pass();
    a.kind = kind == "summon" ? ActionKind::Summon : kind == "use" ? ActionKind::UseItem : ActionKind::Attack;
    if (kind != "summon" && kind != "use" && kind != "attack") throw std::invalid_argument("unknown action kind " + kind);
    a.card = j.at("card").get<CardId>();
    a.lane = j.at("lane").get<std::uint8_t>();
    a.slot = j.at("slot").get<std::uint8_t>();
    a.target = target_from(j.at("target"));
    return a;
}

}  // namespace

JsonLinesGameLog::JsonLinesGameLog(std::ostream& out, const Deck& deck0, const Deck& deck1, std::uint64_t seed,
                                   const Engine& engine)
    : out_(out) {
    json header{{"type", "header"},
                {"seed", seed},
                {"lanes", engine.rules().lanes},
                {"cards", engine.cards().fingerprint()},
                {"deck0", deck0},
                {"deck1", deck1}};
    out_ << header.dump() << '\n';
}

void JsonLinesGameLog::on_action(const GameState& before, const Action& action) {
    json rec{{"type", "action"},  {"step", step_++},        {"turn", before.turn},
             {"actor", before.active}, {"hash", hex(state_hash(before))}, {"action", action_json(action)}};
    out_ << rec.dump() << '\n';
}

void JsonLinesGameLog::finish(Outcome outcome) {
    out_ << json{{"type", "result"}, {"outcome", to_string(outcome)}, {"steps", step_}}.dump() << '\n';
}

ReplayReport replay_game_log(const Engine& engine, std::istream& log) {
    ReplayReport report;
    std::string line;
    std::optional<GameState> state;
    try {
        while (std::getline(log, line)) {
            if (line.empty()) continue;
            const json rec = json::parse(line);
            const auto type = rec.at("type").get<std::string>();
            if (type == "header") {
                if (rec.at("lanes").get<int>() != engine.rules().lanes) throw std::runtime_error("lane count mismatch");
                if (rec.at("cards").get<std::string>() != engine.cards().fingerprint())
                    throw std::runtime_error("card set fingerprint mismatch");
                state = engine.new_game(rec.at("deck0").get<Deck>(), rec.at("deck1").get<Deck>(),
                                        rec.at("seed").get<std::uint64_t>());
            } else if (type == "action") {
                if (!state) throw std::runtime_error("action before header");
                if (rec.at("hash").get<std::string>() != hex(state_hash(*state)))
                    throw std::runtime_error("state hash mismatch at step " + std::to_string(report.steps));
                engine.apply(*state, action_from(rec.at("action")));
                ++report.steps;
            } else if (type == "result") {
                if (!state || !state->over) throw std::runtime_error("log ends before the game is over");
                if (rec.at("outcome").get<std::string>() != to_string(*state->over))
                    throw std::runtime_error("outcome mismatch");
                report.outcome = state->over;
            }
        }
        report.consistent = report.outcome.has_value();
        if (!report.consistent) report.error = "missing result record";
    } catch (const std::exception& e) {
        report.consistent = false;
        report.error = e.what();
    }
    return report;
}

}  // namespace arena
