#include "arena/cardset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "arena/seeding.hpp"

namespace arena {

namespace {

constexpr int kMaxCost = 12;

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw CardSetError("line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view field, std::size_t line, std::string_view name) {
    field = trim(field);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        fail(line, "malformed " + std::string(name) + " field '" + std::string(field) + "'");
    return value;
}

std::vector<Violation> card_violations(const Card& c) {
    std::vector<Violation> out;
    auto add = [&](std::string msg) { out.push_back({c.id, "card " + std::to_string(c.id) + ": " + std::move(msg)}); };
    if (c.cost < 0 || c.cost > kMaxCost) add("cost " + std::to_string(c.cost) + " outside 0..12");
    if (c.card_draw < 0) add("negative card draw");
    switch (c.kind) {
        case CardKind::Creature:
            if (c.attack < 0) add("creature attack must be >= 0");
            if (c.defense < 1) add("creature defense must be >= 1");
            break;
        case CardKind::BlueItem:
            if (c.attack > 0) add("blue item attack must be <= 0");
            break;
        case CardKind::GreenItem:
        case CardKind::RedItem:
            break;
    }
    return out;
}

}  // namespace

std::string KeywordSet::mask() const {
    std::string out(kKeywordCount, '-');
    for (std::size_t i = 0; i < kKeywordCount; ++i)
        if (has(static_cast<Keyword>(i))) out[i] = kKeywordLetters[i];
    return out;
}

std::optional<KeywordSet> KeywordSet::parse(std::string_view mask) {
    if (mask.size() != kKeywordCount) return std::nullopt;
    KeywordSet out;
    for (std::size_t i = 0; i < kKeywordCount; ++i) {
        if (mask[i] == kKeywordLetters[i])
            out.set(static_cast<Keyword>(i));
        else if (mask[i] != '-')
            return std::nullopt;
    }
    return out;
}

std::string_view to_string(CardKind kind) {
    switch (kind) {
        case CardKind::Creature: return "creature";
        case CardKind::GreenItem: return "itemGreen";
        case CardKind::RedItem: return "itemRed";
        case CardKind::BlueItem: return "itemBlue";
    }
    return "?";
}

std::optional<CardKind> parse_card_kind(std::string_view text) {
    for (auto k : {CardKind::Creature, CardKind::GreenItem, CardKind::RedItem, CardKind::BlueItem})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

CardSet::CardSet(std::vector<Card> cards, std::optional<std::size_t> declared_size)
    : cards_(std::move(cards)), declared_size_(declared_size.value_or(cards_.size())) {
    std::size_t max_id = declared_size_;
    for (const auto& c : cards_) max_id = std::max<std::size_t>(max_id, c.id);
    index_.assign(max_id + 1, -1);
    for (std::size_t i = 0; i < cards_.size(); ++i)
        if (index_[cards_[i].id] < 0) index_[cards_[i].id] = static_cast<std::int32_t>(i);
}

bool CardSet::contains(CardId id) const noexcept {
    return id < index_.size() && index_[id] >= 0 && id >= 1 && id <= declared_size_;
}

std::string CardSet::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(*this)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<Violation> validate(const CardSet& card_set) {
    std::vector<Violation> out;
    const std::size_t n = card_set.size();
    std::vector<int> seen(n + 1, 0);
    for (const auto& c : card_set.cards()) {
        if (c.id < 1 || c.id > n) {
            out.push_back({c.id, "card " + std::to_string(c.id) + ": id outside 1.." + std::to_string(n)});
        } else if (++seen[c.id] == 2) {
            out.push_back({c.id, "duplicate id " + std::to_string(c.id)});
        }
        auto v = card_violations(c);
        out.insert(out.end(), v.begin(), v.end());
    }
    for (std::size_t id = 1; id <= n; ++id)
        if (seen[id] == 0)
            out.push_back({static_cast<CardId>(id), "coverage: id " + std::to_string(id) + " missing from a set declared with " +
                                                        std::to_string(n) + " cards"});
    return out;
}

CardSet load_card_set(std::string_view text) {
    std::vector<Card> cards;
    std::set<int> ids;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(line, ';');
        if (fields.size() != 10) fail(line_no, "expected 10 ';'-separated fields, got " + std::to_string(fields.size()));
        Card c;
        int id = parse_int(fields[0], line_no, "id");
        if (id < 1 || id > 0xFFFF) fail(line_no, "id " + std::to_string(id) + " out of range");
        if (!ids.insert(id).second) fail(line_no, "duplicate id " + std::to_string(id));
        c.id = static_cast<CardId>(id);
        c.name = std::string(trim(fields[1]));
        auto kind = parse_card_kind(trim(fields[2]));
        if (!kind) fail(line_no, "unknown card kind '" + std::string(trim(fields[2])) + "'");
        c.kind = *kind;
        c.cost = parse_int(fields[3], line_no, "cost");
        c.attack = parse_int(fields[4], line_no, "attack");
        c.defense = parse_int(fields[5], line_no, "defense");
        auto kw = KeywordSet::parse(trim(fields[6]));
        if (!kw)
            fail(line_no, "keyword mask '" + std::string(trim(fields[6])) + "' must match [B-][C-][D-][G-][L-][W-]");
        c.keywords = *kw;
        c.player_hp_delta = parse_int(fields[7], line_no, "playerHP");
        c.opponent_hp_delta = parse_int(fields[8], line_no, "enemyHP");
        c.card_draw = parse_int(fields[9], line_no, "cardDraw");
        if (auto v = card_violations(c); !v.empty()) fail(line_no, v.front().message);
        cards.push_back(std::move(c));
    }
    const auto n = cards.size();
    for (const auto& c : cards)
        if (c.id > n)
            throw CardSetError("id set is not exactly {1.." + std::to_string(n) + "}: found id " + std::to_string(c.id));
    std::sort(cards.begin(), cards.end(), [](const Card& a, const Card& b) { return a.id < b.id; });
    return CardSet(std::move(cards));
}

CardSet load_card_set_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CardSetError("cannot open card file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_card_set(ss.str());
}

std::string serialize(const CardSet& card_set) {
    std::ostringstream out;
    for (const auto& c : card_set.cards()) {
        out << c.id << ';' << c.name << ';' << to_string(c.kind) << ';' << c.cost << ';' << c.attack << ';' << c.defense
            << ';' << c.keywords.mask() << ';' << c.player_hp_delta << ';' << c.opponent_hp_delta << ';' << c.card_draw
            << '\n';
    }
    return out.str();
}

CardSet generate_card_set(std::uint64_t seed, std::size_t size) {
    if (size < 3) throw std::invalid_argument("generate_card_set: size must be >= 3");
    if (size > 0xFFFF) throw std::invalid_argument("generate_card_set: size too large");

    static constexpr std::array<std::string_view, 16> kSyllables = {"ka", "lo", "mir", "tha", "ven", "dor", "si",  "ru",
                                                                     "gal", "esh", "no", "bri", "ul",  "zan", "fe", "ot"};
    // Creature cost profile, skewed toward the cheap end of the curve.
    static constexpr std::array<double, kMaxCost + 1> kCostWeights = {2, 10, 14, 14, 12, 10, 8, 6, 4, 3, 2, 1, 1};

    Rng rng(derive_seed(seed, Phase::CardGen, {size}));
    std::discrete_distribution<int> creature_cost(kCostWeights.begin(), kCostWeights.end());
    auto range = [&](int lo, int hi) { return std::uniform_int_distribution<int>{lo, hi}(rng); };
    auto chance = [&](double p) { return uniform01(rng) < p; };
    auto random_keywords = [&](double p) {
        KeywordSet k;
        for (std::size_t i = 0; i < kKeywordCount; ++i)
            if (chance(p)) k.set(static_cast<Keyword>(i));
        return k;
    };

    std::vector<Card> cards;
    cards.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Card c;
        c.id = static_cast<CardId>(i + 1);
        const double roll = uniform01(rng);
        c.kind = roll < 0.7 ? CardKind::Creature
                 : roll < 0.8 ? CardKind::GreenItem
                 : roll < 0.9 ? CardKind::RedItem
                              : CardKind::BlueItem;
        switch (c.kind) {
            case CardKind::Creature: {
                c.cost = creature_cost(rng);
                const int total = range(std::max(1, c.cost), 2 * c.cost + 2);
                c.defense = range(1, total);
                c.attack = total - c.defense;
                c.keywords = random_keywords(0.15);
                if (chance(0.1)) c.player_hp_delta = range(1, 4);
                if (chance(0.1)) c.opponent_hp_delta = -range(1, 3);
                if (chance(0.1)) c.card_draw = range(1, 2);
                break;
            }
            case CardKind::GreenItem:
                c.cost = range(0, 7);
                c.attack = range(0, c.cost / 2 + 2);
                c.defense = range(0, c.cost / 2 + 2);
                c.keywords = random_keywords(0.15);
                if (chance(0.1)) c.card_draw = 1;
                break;
            case CardKind::RedItem:
                c.cost = range(0, 8);
                c.attack = -range(0, c.cost / 2 + 1);
                c.defense = -range(0, c.cost / 2 + 2);
                c.keywords = random_keywords(0.3);
                if (chance(0.1)) c.card_draw = 1;
                break;
            case CardKind::BlueItem:
                c.cost = range(0, 8);
                c.attack = 0;
                c.defense = -range(0, c.cost / 2 + 2);
                if (chance(0.3)) c.opponent_hp_delta = -range(1, 3);
                if (chance(0.2)) c.player_hp_delta = range(1, 3);
                if (chance(0.1)) c.card_draw = 1;
                break;
        }
        const int syllables = range(2, 3);
        for (int s = 0; s < syllables; ++s) c.name += kSyllables[uniform_index(rng, kSyllables.size())];
        c.name[0] = static_cast<char>(c.name[0] - 'a' + 'A');
        cards.push_back(std::move(c));
    }
    return CardSet(std::move(cards));
}

}  // namespace arena
