#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace zknono {

enum class Suit : std::uint8_t { Club = 0, Heart = 1, Spade = 2, Diamond = 3 };

inline constexpr std::array<Suit, 4> kAllSuits = {Suit::Club, Suit::Heart,
                                                  Suit::Spade, Suit::Diamond};

std::string_view suit_name(Suit s);
std::optional<Suit> suit_from_name(std::string_view name);

/// One physical card. The suit is the hidden identity: all backs look the
/// same, so the suit is observable only while the card lies face up.
/// `tag` identifies the physical card within one run; it exists for
/// simulation-level audits and never appears in any transcript.
class TableCard {
public:
    TableCard(Suit suit, bool face_up, std::uint32_t tag)
        : suit_(suit), face_up_(face_up), tag_(tag) {}

    bool face_up() const { return face_up_; }
    void turn_up() { face_up_ = true; }
    void turn_down() { face_up_ = false; }

    /// What an observer sees: nothing while the card is face down.
    std::optional<Suit> visible_suit() const {
        if (face_up_) return suit_;
        return std::nullopt;
    }

    /// Trusted-physics access to the identity. The simulation needs it to
    /// move cards around; observer-facing code must go through
    /// visible_suit().
    Suit hidden_suit() const { return suit_; }

    std::uint32_t tag() const { return tag_; }

private:
    Suit suit_;
    bool face_up_;
    std::uint32_t tag_;
};

}  // namespace zknono
