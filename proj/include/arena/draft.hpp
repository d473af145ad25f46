#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "arena/cardset.hpp"
#include "arena/engine.hpp"
#include "arena/seeding.hpp"

namespace arena {

inline constexpr int kDraftTurns = kDeckSize;
inline constexpr int kDraftChoices = 3;

template <typename Scalar>
using GenomeT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
/// One value per card; coefficient i holds the value of card id i + 1.
using Genome = GenomeT<double>;

using DraftTurn = std::array<CardId, kDraftChoices>;

struct Draft {
    std::array<DraftTurn, kDraftTurns> turns{};
    friend bool operator==(const Draft&, const Draft&) = default;
};

/// Card-value policy. Values are checked to lie in [0, 1].
class DraftPolicy {
public:
    DraftPolicy() = default;
    explicit DraftPolicy(Genome values);

    [[nodiscard]] const Genome& values() const noexcept { return values_; }
    [[nodiscard]] double value(CardId id) const noexcept { return values_[id - 1]; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

private:
    Genome values_;
};

/// Offered-slot index (0-based) of the highest value; the lowest slot wins ties.
template <typename Derived>
std::size_t pick(const Eigen::DenseBase<Derived>& values, const DraftTurn& turn) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < turn.size(); ++s)
        if (values(turn[s] - 1) > values(turn[best] - 1)) best = s;
    return best;
}

inline std::size_t pick(const DraftPolicy& policy, const DraftTurn& turn) { return pick(policy.values(), turn); }

template <typename Derived>
Deck build_deck(const Eigen::DenseBase<Derived>& values, const Draft& draft) {
    Deck deck{};
    for (std::size_t t = 0; t < draft.turns.size(); ++t) deck[t] = draft.turns[t][pick(values, draft.turns[t])];
    return deck;
}

inline Deck build_deck(const DraftPolicy& policy, const Draft& draft) { return build_deck(policy.values(), draft); }

/// Interface so the draft distribution can be swapped.
class DraftGenerator {
public:
    virtual ~DraftGenerator() = default;
    [[nodiscard]] virtual Draft generate(const CardSet& cards, std::uint64_t seed) const = 0;
};

/// Each turn: 3 distinct ids uniformly at random, turns independent.
class UniformDraftGenerator final : public DraftGenerator {
public:
    [[nodiscard]] Draft generate(const CardSet& cards, std::uint64_t seed) const override;
};

Draft generate_draft(const CardSet& cards, std::uint64_t seed);

/// `count` drafts from the stream (seed, phase); draft i depends only on i.
std::vector<Draft> generate_drafts(const CardSet& cards, std::uint64_t seed, Phase phase, std::size_t count,
                                   const DraftGenerator& generator = UniformDraftGenerator{});

/// Set of card ids offered anywhere in a collection of drafts, as a gene mask.
class ActiveSet {
public:
    using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

    explicit ActiveSet(std::size_t card_count) : mask_(Mask::Constant(static_cast<Eigen::Index>(card_count), false)) {}

    static ActiveSet all(std::size_t card_count);

    void insert(CardId id) { mask_[id - 1] = true; }
    [[nodiscard]] bool contains(CardId id) const { return mask_[id - 1]; }
    [[nodiscard]] std::size_t count() const { return static_cast<std::size_t>(mask_.count()); }
    [[nodiscard]] std::size_t universe() const { return static_cast<std::size_t>(mask_.size()); }
    [[nodiscard]] const Mask& mask() const noexcept { return mask_; }
    [[nodiscard]] std::vector<CardId> ids() const;

    friend bool operator==(const ActiveSet& a, const ActiveSet& b) {
        return a.mask_.size() == b.mask_.size() && (a.mask_ == b.mask_).all();
    }

private:
    Mask mask_;
};

ActiveSet active_genes(std::span<const Draft> drafts, std::size_t card_count);

/// (size * (size-1) * ... * (size-choices+1)) ^ turns, exact.
boost::multiprecision::cpp_int count_draft_space(unsigned set_size, unsigned turns, unsigned choices);

/// One line per turn, "id,id,id"; drafts separated by a blank line.
std::string serialize_drafts(std::span<const Draft> drafts);
std::vector<Draft> parse_drafts(std::string_view text, const CardSet& cards);

/// {"fingerprint": "...", "values": [...]}.
std::string serialize_policy(const DraftPolicy& policy, const CardSet& cards);
DraftPolicy parse_policy(std::string_view json_text, const CardSet& cards);

}  // namespace arena
