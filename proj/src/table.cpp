#include "zknono/table.hpp"

#include <algorithm>

namespace zknono {

std::vector<std::optional<Suit>> TableSequence::observer_view() const {
    std::vector<std::optional<Suit>> view;
    view.reserve(cards_.size());
    for (const TableCard& c : cards_) view.push_back(c.visible_suit());
    return view;
}

void TableSequence::shift_right(std::size_t amount) {
    if (cards_.size() < 2) return;
    amount %= cards_.size();
    if (amount == 0) return;
    std::rotate(cards_.begin(), cards_.end() - static_cast<std::ptrdiff_t>(amount),
                cards_.end());
}

PileMatrix::PileMatrix(std::vector<TableSequence> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw MisuseError("pile matrix needs at least one row");
    for (const TableSequence& r : rows_)
        if (r.size() != rows_[0].size())
            throw MisuseError("pile matrix rows must have equal length");
}

void PileMatrix::shift_columns_right(std::size_t amount) {
    for (TableSequence& r : rows_) r.shift_right(amount);
}

namespace {

// Face-up cards are freshly observable at their new positions after any
// shuffle. Scans row-major and records them.
void emit_visible_after_shuffle(const TableSequence& seq, Transcript& tr) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq.at(i).face_up())
            tr.reveal(static_cast<std::uint32_t>(i), seq.at(i).hidden_suit());
}

}  // namespace

void random_cut(TableSequence& seq, RandomSource& rng, Transcript& tr) {
    if (seq.empty()) throw MisuseError("random cut on empty sequence");
    const std::size_t r = static_cast<std::size_t>(rng.uniform(seq.size()));
    seq.shift_right(r);
    tr.shuffle(ShuffleKind::Cut, static_cast<std::uint32_t>(seq.size()));
    emit_visible_after_shuffle(seq, tr);
}

void pile_shifting_shuffle(PileMatrix& mat, RandomSource& rng, Transcript& tr) {
    if (mat.cols() == 0) throw MisuseError("pile-shifting shuffle on zero columns");
    const std::size_t r = static_cast<std::size_t>(rng.uniform(mat.cols()));
    mat.shift_columns_right(r);
    tr.shuffle(ShuffleKind::Pile, static_cast<std::uint32_t>(mat.cols()));
    for (std::size_t row = 0; row < mat.rows(); ++row)
        emit_visible_after_shuffle(mat.row(row), tr);
}

Suit reveal(TableSequence& seq, std::size_t pos, Transcript& tr) {
    if (seq.empty()) throw MisuseError("reveal on empty sequence");
    TableCard& card = seq.at(pos);
    if (card.face_up()) throw MisuseError("reveal of a card that is already face up");
    card.turn_up();
    const Suit s = card.hidden_suit();
    tr.reveal(static_cast<std::uint32_t>(seq.mod(pos)), s);
    return s;
}

void turn_all_face_down(TableSequence& seq) {
    for (TableCard& c : seq.cards()) c.turn_down();
}

void replace_with_supply(TableSequence& seq, std::size_t pos, Suit new_suit,
                         Supply& supply, Transcript& tr) {
    if (seq.empty()) throw MisuseError("replace on empty sequence");
    TableCard& card = seq.at(pos);
    if (!card.face_up()) throw MisuseError("replace of a face-down card");
    TableCard fresh = supply.draw(new_suit, true);
    supply.give_back(card);
    card = fresh;
    tr.replace(static_cast<std::uint32_t>(seq.mod(pos)), new_suit);
}

void remove_card(TableSequence& seq, std::size_t pos, Supply& supply, Transcript& tr) {
    if (seq.empty()) throw MisuseError("remove on empty sequence");
    const std::size_t i = seq.mod(pos);
    if (!seq.at(i).face_up()) throw MisuseError("remove of a face-down card");
    supply.give_back(seq.at(i));
    seq.cards().erase(seq.cards().begin() + static_cast<std::ptrdiff_t>(i));
    tr.remove(static_cast<std::uint32_t>(i));
}

void rotate_public(TableSequence& seq, std::size_t amount, Transcript& tr) {
    for (const TableCard& c : seq.cards())
        if (!c.face_up()) throw MisuseError("public rotation requires all cards face up");
    seq.shift_right(seq.empty() ? 0 : amount % seq.size());
    tr.rotate(static_cast<std::uint32_t>(seq.empty() ? amount : amount % seq.size()));
}

}  // namespace zknono
