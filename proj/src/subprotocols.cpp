#include "zknono/subprotocols.hpp"

namespace zknono {

std::pair<Suit, Suit> commitment_pair(Cell color) {
    if (color == Cell::Black) return {Suit::Club, Suit::Heart};
    return {Suit::Heart, Suit::Club};
}

Commitment Commitment::make(Cell color, Supply& supply, Transcript& tr) {
    const auto [first, second] = commitment_pair(color);
    return make_pair(first, second, supply, tr);
}

Commitment Commitment::make_pair(Suit first, Suit second, Supply& supply, Transcript& tr) {
    TableCard a = supply.draw(first, false);
    TableCard b = supply.draw(second, false);
    tr.place(2, false);
    return Commitment(a, b);
}

bool Commitment::well_formed() const {
    const Suit a = first_.hidden_suit(), b = second_.hidden_suit();
    return (a == Suit::Club && b == Suit::Heart) || (a == Suit::Heart && b == Suit::Club);
}

std::optional<Cell> Commitment::encoded_color() const {
    if (!well_formed()) return std::nullopt;
    return first_.hidden_suit() == Suit::Club ? Cell::Black : Cell::White;
}

namespace {

TableSequence helper_pair_row(Supply& supply, Transcript& tr) {
    TableSequence row;
    row.append(supply.draw(Suit::Club, true));
    row.append(supply.draw(Suit::Heart, true));
    tr.place(2, true);
    turn_all_face_down(row);
    return row;
}

// Shared tail of the copy/format gadgets: shuffle, reveal the first row,
// decide the swap from the revealed word. Returns nullopt on a malformed
// word. The revealed amount (0 or 1) is always recorded as a public
// rotation so the event skeleton does not depend on the outcome.
std::optional<std::size_t> reveal_first_row_word(PileMatrix& mat, Supply& supply,
                                                 RandomSource& rng, Transcript& tr) {
    pile_shifting_shuffle(mat, rng, tr);
    const Suit s0 = reveal(mat.row(0), 0, tr);
    const Suit s1 = reveal(mat.row(0), 1, tr);
    const bool straight = (s0 == Suit::Club && s1 == Suit::Heart);
    const bool swapped = (s0 == Suit::Heart && s1 == Suit::Club);
    if (!straight && !swapped) return std::nullopt;
    const std::size_t amount = swapped ? 1 : 0;
    mat.shift_columns_right(amount);
    tr.rotate(static_cast<std::uint32_t>(amount));
    // The revealed input cards are public now and go back to the supply.
    for (TableCard& c : mat.row(0).cards()) supply.give_back(c);
    return amount;
}

}  // namespace

FormatCheckResult verify_format(Commitment input, Supply& supply, RandomSource& rng,
                                Transcript& tr) {
    TableSequence first_row;
    first_row.append(input.take_first());
    first_row.append(input.take_second());
    PileMatrix mat({std::move(first_row), helper_pair_row(supply, tr)});

    const auto amount = reveal_first_row_word(mat, supply, rng, tr);
    if (!amount) return {};

    auto rows = mat.take_rows();
    FormatCheckResult result;
    result.ok = true;
    result.out = Commitment::from_cards(rows[1].at(0), rows[1].at(1));
    return result;
}

CopyResult copy_commitment(Commitment input, Supply& supply, RandomSource& rng,
                           Transcript& tr) {
    TableSequence first_row;
    first_row.append(input.take_first());
    first_row.append(input.take_second());
    TableSequence h1 = helper_pair_row(supply, tr);
    TableSequence h2 = helper_pair_row(supply, tr);
    PileMatrix mat({std::move(first_row), std::move(h1), std::move(h2)});

    const auto amount = reveal_first_row_word(mat, supply, rng, tr);
    if (!amount) return {};

    auto rows = mat.take_rows();
    CopyResult result;
    result.ok = true;
    result.a = Commitment::from_cards(rows[1].at(0), rows[1].at(1));
    result.b = Commitment::from_cards(rows[2].at(0), rows[2].at(1));
    return result;
}

ChosenCutResult chosen_cut(TableSequence& seq, std::size_t secret_pos, Supply& supply,
                           RandomSource& rng, Transcript& tr,
                           const ChosenCutOptions& options) {
    if (seq.empty()) throw MisuseError("chosen cut on empty sequence");
    if (!options.allow_face_up_payload)
        for (const TableCard& c : seq.cards())
            if (c.face_up()) throw MisuseError("chosen cut requires a face-down payload");
    const std::size_t len = seq.size();
    secret_pos %= len;

    TableSequence helper;
    if (options.helper_override) {
        if (options.helper_override->size() != len)
            throw MisuseError("helper override length mismatch");
        for (Suit s : *options.helper_override) helper.append(supply.draw(s, false));
    } else {
        for (std::size_t i = 0; i < len; ++i)
            helper.append(supply.draw(i == secret_pos ? Suit::Club : Suit::Heart, false));
    }
    tr.place(static_cast<std::uint32_t>(len), false);

    PileMatrix mat({std::move(seq), std::move(helper)});
    pile_shifting_shuffle(mat, rng, tr);
    if (options.allow_face_up_payload) turn_all_face_down(mat.row(0));

    std::size_t clubs = 0, club_pos = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const Suit s = reveal(mat.row(1), i, tr);
        if (s == Suit::Club) {
            ++clubs;
            club_pos = i;
        }
    }

    auto rows = mat.take_rows();
    seq = std::move(rows[0]);
    for (TableCard& c : rows[1].cards()) supply.give_back(c);

    ChosenCutResult result;
    result.ok = (clubs == 1);
    result.position = club_pos;
    return result;
}

}  // namespace zknono
