#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arena {

using CardId = std::uint16_t;

enum class CardKind : std::uint8_t { Creature, GreenItem, RedItem, BlueItem };

enum class Keyword : std::uint8_t { Breakthrough = 0, Charge, Drain, Guard, Lethal, Ward };

inline constexpr std::size_t kKeywordCount = 6;
inline constexpr std::string_view kKeywordLetters = "BCDGLW";

/// Six keyword flags packed in a byte, bit i = Keyword(i).
class KeywordSet {
public:
    constexpr KeywordSet() = default;
    constexpr explicit KeywordSet(std::uint8_t bits) : bits_(bits & 0x3F) {}

    [[nodiscard]] constexpr bool has(Keyword k) const noexcept { return bits_ & bit(k); }
    constexpr void set(Keyword k) noexcept { bits_ |= bit(k); }
    constexpr void clear(Keyword k) noexcept { bits_ &= static_cast<std::uint8_t>(~bit(k)); }
    constexpr void add(KeywordSet other) noexcept { bits_ |= other.bits_; }
    constexpr void remove(KeywordSet other) noexcept { bits_ &= static_cast<std::uint8_t>(~other.bits_); }
    [[nodiscard]] constexpr std::uint8_t bits() const noexcept { return bits_; }
    [[nodiscard]] constexpr bool none() const noexcept { return bits_ == 0; }

    /// Canonical 6-character mask, e.g. "B--G-W".
    [[nodiscard]] std::string mask() const;
    /// Parses a canonical mask; nullopt if it is not of the form [B-][C-][D-][G-][L-][W-].
    static std::optional<KeywordSet> parse(std::string_view mask);

    friend constexpr bool operator==(KeywordSet, KeywordSet) = default;

private:
    static constexpr std::uint8_t bit(Keyword k) noexcept { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
    std::uint8_t bits_ = 0;
};

struct Card {
    CardId id = 0;
    std::string name;
    CardKind kind = CardKind::Creature;
    int cost = 0;
    int attack = 0;   // delta for items
    int defense = 0;  // delta for items
    KeywordSet keywords;
    int player_hp_delta = 0;
    int opponent_hp_delta = 0;
    int card_draw = 0;

    [[nodiscard]] bool is_creature() const noexcept { return kind == CardKind::Creature; }
    friend bool operator==(const Card&, const Card&) = default;
};

std::string_view to_string(CardKind kind);
std::optional<CardKind> parse_card_kind(std::string_view text);

class CardSetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The card universe. Immutable after construction. Cards are kept in id order
/// so that lookup by id is an index; `declared_size` is the |C| the set claims
/// to cover (defaults to the number of cards).
class CardSet {
public:
    CardSet() = default;
    explicit CardSet(std::vector<Card> cards, std::optional<std::size_t> declared_size = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return declared_size_; }
    [[nodiscard]] std::span<const Card> cards() const noexcept { return cards_; }
    [[nodiscard]] bool contains(CardId id) const noexcept;
    /// Precondition: contains(id).
    [[nodiscard]] const Card& at(CardId id) const noexcept { return cards_[static_cast<std::size_t>(index_[id])]; }
    /// FNV-1a hash of the serialized set, hex encoded.
    [[nodiscard]] std::string fingerprint() const;

    friend bool operator==(const CardSet& a, const CardSet& b) {
        return a.declared_size_ == b.declared_size_ && a.cards_ == b.cards_;
    }

private:
    std::vector<Card> cards_;
    std::vector<std::int32_t> index_;  // id -> position in cards_, -1 if absent
    std::size_t declared_size_ = 0;
};

struct Violation {
    std::optional<CardId> card;
    std::string message;
};

/// Lists every broken card or coverage invariant; empty iff the set is valid.
std::vector<Violation> validate(const CardSet& card_set);

/// Parses the semicolon-separated card format. Throws CardSetError with the
/// offending line number on malformed input or invariant violations.
CardSet load_card_set(std::string_view text);
CardSet load_card_set_file(const std::string& path);
std::string serialize(const CardSet& card_set);

/// Deterministic procedural card set; size >= 3.
CardSet generate_card_set(std::uint64_t seed, std::size_t size);

inline constexpr std::uint64_t kDefaultCardSeed = 2019;
inline constexpr std::size_t kDefaultCardCount = 160;

}  // namespace arena
