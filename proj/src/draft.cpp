#include "arena/draft.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace arena {

DraftPolicy::DraftPolicy(Genome values) : values_(std::move(values)) {
    if (values_.size() == 0) throw std::invalid_argument("draft policy must not be empty");
    if (!values_.allFinite() || (values_.array() < 0.0).any() || (values_.array() > 1.0).any())
        throw std::invalid_argument("draft policy values must lie in [0, 1]");
}

Draft UniformDraftGenerator::generate(const CardSet& cards, std::uint64_t seed) const {
    const std::size_t n = cards.size();
    if (n < kDraftChoices) throw std::invalid_argument("draft generation needs at least 3 cards");
    Rng rng(seed);
    Draft draft;
    for (auto& turn : draft.turns) {
        for (std::size_t s = 0; s < turn.size(); ++s) {
            CardId id;
            do {
                id = static_cast<CardId>(uniform_index(rng, n) + 1);
            } while (std::find(turn.begin(), turn.begin() + static_cast<std::ptrdiff_t>(s), id) !=
                     turn.begin() + static_cast<std::ptrdiff_t>(s));
            turn[s] = id;
        }
    }
    return draft;
}

Draft generate_draft(const CardSet& cards, std::uint64_t seed) { return UniformDraftGenerator{}.generate(cards, seed); }

std::vector<Draft> generate_drafts(const CardSet& cards, std::uint64_t seed, Phase phase, std::size_t count,
                                   const DraftGenerator& generator) {
    std::vector<Draft> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(generator.generate(cards, derive_seed(seed, phase, {i})));
    return out;
}

ActiveSet ActiveSet::all(std::size_t card_count) {
    ActiveSet s(card_count);
    s.mask_.setConstant(true);
    return s;
}

std::vector<CardId> ActiveSet::ids() const {
    std::vector<CardId> out;
    for (Eigen::Index i = 0; i < mask_.size(); ++i)
        if (mask_[i]) out.push_back(static_cast<CardId>(i + 1));
    return out;
}

ActiveSet active_genes(std::span<const Draft> drafts, std::size_t card_count) {
    ActiveSet active(card_count);
    for (const auto& d : drafts)
        for (const auto& turn : d.turns)
            for (CardId id : turn) active.insert(id);
    return active;
}

boost::multiprecision::cpp_int count_draft_space(unsigned set_size, unsigned turns, unsigned choices) {
    if (choices > set_size) throw std::invalid_argument("count_draft_space: choices must not exceed set size");
    boost::multiprecision::cpp_int per_turn = 1;
    for (unsigned k = 0; k < choices; ++k) per_turn *= set_size - k;
    return boost::multiprecision::pow(per_turn, turns);
}

std::string serialize_drafts(std::span<const Draft> drafts) {
    std::ostringstream out;
    for (std::size_t d = 0; d < drafts.size(); ++d) {
        if (d > 0) out << '\n';
        for (const auto& turn : drafts[d].turns) out << turn[0] << ',' << turn[1] << ',' << turn[2] << '\n';
    }
    return out.str();
}

std::vector<Draft> parse_drafts(std::string_view text, const CardSet& cards) {
    std::vector<Draft> out;
    Draft current;
    std::size_t turn = 0, line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        DraftTurn t{};
        std::size_t pos = 0;
        for (std::size_t s = 0; s < t.size(); ++s) {
            const auto end = s + 1 < t.size() ? line.find(',', pos) : line.size();
            if (end == std::string::npos) throw std::invalid_argument("drafts line " + std::to_string(line_no) + ": expected id,id,id");
            unsigned value = 0;
            auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
            if (ec != std::errc{} || ptr != line.data() + end || !cards.contains(static_cast<CardId>(value)) || value > 0xFFFF)
                throw std::invalid_argument("drafts line " + std::to_string(line_no) + ": bad card id");
            t[s] = static_cast<CardId>(value);
            pos = end + 1;
        }
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw std::invalid_argument("drafts line " + std::to_string(line_no) + ": repeated card within a turn");
        current.turns[turn++] = t;
        if (turn == current.turns.size()) {
            out.push_back(current);
            turn = 0;
        }
    }
    if (turn != 0) throw std::invalid_argument("drafts file ends inside a draft (" + std::to_string(turn) + " turns)");
    return out;
}

std::string serialize_policy(const DraftPolicy& policy, const CardSet& cards) {
    nlohmann::json j;
    j["fingerprint"] = cards.fingerprint();
    j["values"] = std::vector<double>(policy.values().begin(), policy.values().end());
    return j.dump();
}

DraftPolicy parse_policy(std::string_view json_text, const CardSet& cards) {
    const auto j = nlohmann::json::parse(json_text);
    const auto& values_json = j.is_array() ? j : j.at("values");
    if (j.is_object() && j.contains("fingerprint") && j.at("fingerprint").get<std::string>() != cards.fingerprint())
        throw std::invalid_argument("policy was trained on a different card set");
    const auto values = values_json.get<std::vector<double>>();
    if (values.size() != cards.size())
        throw std::invalid_argument("policy has " + std::to_string(values.size()) + " values, card set has " +
                                    std::to_string(cards.size()));
    return DraftPolicy(Eigen::Map<const Genome>(values.data(), static_cast<Eigen::Index>(values.size())));
}

}  // namespace arena
