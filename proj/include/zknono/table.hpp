#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zknono/cards.hpp"
#include "zknono/rng.hpp"
#include "zknono/supply.hpp"
#include "zknono/transcript.hpp"

namespace zknono {

/// An ordered row of cards on the table. Its length is public at all times;
/// positions are interpreted cyclically (index arithmetic is modulo the
/// length).
class TableSequence {
public:
    TableSequence() = default;
    explicit TableSequence(std::vector<TableCard> cards) : cards_(std::move(cards)) {}

    void append(TableCard card) { cards_.push_back(card); }
    std::size_t size() const { return cards_.size(); }
    bool empty() const { return cards_.empty(); }

    const TableCard& at(std::size_t pos) const { return cards_[mod(pos)]; }
    TableCard& at(std::size_t pos) { return cards_[mod(pos)]; }

    std::vector<TableCard>& cards() { return cards_; }
    const std::vector<TableCard>& cards() const { return cards_; }

    /// What an observer sees: one entry per card, suit only when face up.
    std::vector<std::optional<Suit>> observer_view() const;

    /// Cyclic shift to the right by `amount` (card at i moves to i+amount).
    void shift_right(std::size_t amount);

    std::size_t mod(std::size_t pos) const { return cards_.empty() ? 0 : pos % cards_.size(); }

private:
    std::vector<TableCard> cards_;
};

/// A rows x cols arrangement of cards whose columns shuffle jointly: a
/// column shift moves every row by the same amount, so cards never move
/// within a column.
class PileMatrix {
public:
    explicit PileMatrix(std::vector<TableSequence> rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return rows_.empty() ? 0 : rows_[0].size(); }

    TableSequence& row(std::size_t r) { return rows_[r]; }
    const TableSequence& row(std::size_t r) const { return rows_[r]; }

    void shift_columns_right(std::size_t amount);

    /// Hand the rows back (used when the gadget dissolves the matrix).
    std::vector<TableSequence> take_rows() { return std::move(rows_); }

private:
    std::vector<TableSequence> rows_;
};

// --- Table operations ------------------------------------------------------
//
// Each operation appends its observable events to the transcript. The hidden
// shift drawn by a shuffle is applied and forgotten; only the shuffle kind
// and size are recorded. If any card happens to lie face up while a shuffle
// runs, its suit is freshly observable at its new position afterwards, so the
// shuffle emits a reveal event for it. Honest protocol runs always shuffle
// face-down material and never produce such events.

/// Cyclic shift of the whole sequence by a uniformly random hidden amount.
void random_cut(TableSequence& seq, RandomSource& rng, Transcript& tr);

/// Cyclic shift of the matrix columns by a uniformly random hidden amount.
void pile_shifting_shuffle(PileMatrix& mat, RandomSource& rng, Transcript& tr);

/// Turn the card at `pos` face up. The card must currently be face down.
Suit reveal(TableSequence& seq, std::size_t pos, Transcript& tr);

/// Turn every face-up card face down. Emits nothing.
void turn_all_face_down(TableSequence& seq);

/// Swap the face-up card at `pos` for a fresh face-up card of `new_suit`.
/// The old card goes back to the supply.
void replace_with_supply(TableSequence& seq, std::size_t pos, Suit new_suit,
                         Supply& supply, Transcript& tr);

/// Remove the face-up card at `pos` from the sequence; it returns to the
/// supply and the remaining cards keep their relative order.
void remove_card(TableSequence& seq, std::size_t pos, Supply& supply, Transcript& tr);

/// Public cyclic shift by a known amount. Requires every card face up; this
/// is a deliberate public action, not a shuffle.
void rotate_public(TableSequence& seq, std::size_t amount, Transcript& tr);

}  // namespace zknono
