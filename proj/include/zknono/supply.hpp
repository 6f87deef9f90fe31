#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "zknono/cards.hpp"
#include "zknono/errors.hpp"

namespace zknono {

/// Per-suit card counts.
struct DeckCounts {
    std::array<std::int64_t, 4> n{};

    std::int64_t& operator[](Suit s) { return n[static_cast<std::size_t>(s)]; }
    std::int64_t operator[](Suit s) const { return n[static_cast<std::size_t>(s)]; }
    std::int64_t total() const { return n[0] + n[1] + n[2] + n[3]; }

    bool operator==(const DeckCounts&) const = default;

    /// True when every per-suit count of `other` fits within this deck.
    bool covers(const DeckCounts& other) const {
        for (std::size_t i = 0; i < 4; ++i)
            if (other.n[i] > n[i]) return false;
        return true;
    }
};

/// The card supply next to the table. Draws hand out fresh physical cards
/// (each with a unique tag); returns retire them. A bounded supply enforces
/// its composition strictly: drawing from an empty pile throws SupplyError.
/// Per-suit usage peaks are tracked so runs can be audited against the
/// protocol's nominal deck afterwards.
class Supply {
public:
    static Supply bounded(const DeckCounts& initial) { return Supply(initial, true); }
    static Supply unbounded() { return Supply(DeckCounts{}, false); }

    TableCard draw(Suit s, bool face_up) {
        if (bounded_) {
            if (available_[s] <= 0)
                throw SupplyError(std::string("supply exhausted for ") +
                                  std::string(suit_name(s)));
            --available_[s];
        }
        ++in_use_[s];
        if (in_use_[s] > peak_in_use_[s]) peak_in_use_[s] = in_use_[s];
        return TableCard(s, face_up, next_tag_++);
    }

    void give_back(const TableCard& card) {
        const Suit s = card.hidden_suit();
        if (bounded_) ++available_[s];
        --in_use_[s];
    }

    std::int64_t available(Suit s) const {
        return bounded_ ? available_[s] : std::numeric_limits<std::int64_t>::max();
    }

    bool is_bounded() const { return bounded_; }
    const DeckCounts& initial() const { return initial_; }
    const DeckCounts& in_use() const { return in_use_; }
    const DeckCounts& peak_in_use() const { return peak_in_use_; }

private:
    Supply(const DeckCounts& initial, bool bounded)
        : bounded_(bounded), initial_(initial), available_(initial) {}

    bool bounded_;
    DeckCounts initial_;
    DeckCounts available_;
    DeckCounts in_use_{};
    DeckCounts peak_in_use_{};
    std::uint32_t next_tag_ = 1;
};

}  // namespace zknono
