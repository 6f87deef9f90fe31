#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "zknono/stats.hpp"
#include "zknono/table.hpp"

using namespace zknono;

namespace {

TableSequence make_seq(Supply& supply, std::initializer_list<Suit> suits,
                       bool face_up = false) {
    TableSequence seq;
    for (Suit s : suits) seq.append(supply.draw(s, face_up));
    return seq;
}

std::vector<Suit> hidden_suits(const TableSequence& seq) {
    std::vector<Suit> out;
    for (const TableCard& c : seq.cards()) out.push_back(c.hidden_suit());
    return out;
}

}  // namespace

TEST_CASE("suit names round-trip") {
    for (Suit s : kAllSuits) CHECK(suit_from_name(suit_name(s)) == s);
    CHECK(!suit_from_name("JOKER").has_value());
}

TEST_CASE("face-down cards hide their suit from observers") {
    Supply supply = Supply::unbounded();
    TableCard card = supply.draw(Suit::Spade, false);
    CHECK(!card.visible_suit().has_value());
    card.turn_up();
    CHECK(card.visible_suit() == Suit::Spade);

    TableSequence seq = make_seq(supply, {Suit::Club, Suit::Heart});
    const auto view = seq.observer_view();
    CHECK(view.size() == 2);
    CHECK(!view[0].has_value());
    CHECK(!view[1].has_value());
}

TEST_CASE("random cut on a single card changes nothing") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(supply, {Suit::Diamond});
    Transcript tr;
    SeededRandomSource rng(7);
    random_cut(seq, rng, tr);
    CHECK(hidden_suits(seq) == std::vector<Suit>{Suit::Diamond});
}

TEST_CASE("random cut with a forced zero shift is the identity") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(supply, {Suit::Club, Suit::Heart, Suit::Diamond});
    Transcript tr;
    ScriptedRandomSource rng({0});
    random_cut(seq, rng, tr);
    CHECK(hidden_suits(seq) == std::vector<Suit>{Suit::Club, Suit::Heart, Suit::Diamond});
}

TEST_CASE("random cut outputs are rotations and uniformly distributed") {
    // Tag 0 starts at position 0; its landing spot identifies the rotation.
    SeededRandomSource rng(20240);
    std::vector<std::uint64_t> counts(5, 0);
    for (int trial = 0; trial < 30000; ++trial) {
        Supply supply = Supply::unbounded();
        TableSequence seq = make_seq(
            supply, {Suit::Club, Suit::Heart, Suit::Spade, Suit::Diamond, Suit::Heart});
        const std::uint32_t first_tag = seq.at(0).tag();
        const std::vector<Suit> before = hidden_suits(seq);
        Transcript tr(false);
        random_cut(seq, rng, tr);

        std::size_t r = 5;
        for (std::size_t i = 0; i < 5; ++i)
            if (seq.at(i).tag() == first_tag) r = i;
        REQUIRE(r < 5);
        ++counts[r];

        std::vector<Suit> rotated(5);
        for (std::size_t i = 0; i < 5; ++i) rotated[(i + r) % 5] = before[i];
        CHECK(hidden_suits(seq) == rotated);
    }
    const ChiSquareResult chi = chi_square_uniform(counts);
    CHECK(chi.df == 4);
    CHECK(chi.p_value >= 0.01);
}

TEST_CASE("random cut rejects an empty sequence") {
    TableSequence seq;
    Transcript tr;
    SeededRandomSource rng(1);
    CHECK_THROWS_AS(random_cut(seq, rng, tr), MisuseError);
}

TEST_CASE("pile-shifting shuffle on one column changes nothing") {
    Supply supply = Supply::unbounded();
    PileMatrix mat({make_seq(supply, {Suit::Club}), make_seq(supply, {Suit::Heart})});
    Transcript tr;
    SeededRandomSource rng(3);
    pile_shifting_shuffle(mat, rng, tr);
    CHECK(mat.row(0).at(0).hidden_suit() == Suit::Club);
    CHECK(mat.row(1).at(0).hidden_suit() == Suit::Heart);
}

TEST_CASE("pile-shifting shuffle moves whole columns") {
    Supply supply = Supply::unbounded();
    // Columns are (C,D), (H,H), (S,C); forced shift 1 makes the order 3,1,2.
    PileMatrix mat({make_seq(supply, {Suit::Club, Suit::Heart, Suit::Spade}),
                    make_seq(supply, {Suit::Diamond, Suit::Heart, Suit::Club})});
    Transcript tr;
    ScriptedRandomSource rng({1});
    pile_shifting_shuffle(mat, rng, tr);
    CHECK(hidden_suits(mat.row(0)) == std::vector<Suit>{Suit::Spade, Suit::Club, Suit::Heart});
    CHECK(hidden_suits(mat.row(1)) ==
          std::vector<Suit>{Suit::Club, Suit::Diamond, Suit::Heart});
}

TEST_CASE("pile-shifting shuffle preserves the column multiset") {
    SeededRandomSource rng(99);
    SeededRandomSource layout(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + layout.uniform(8);
        Supply supply = Supply::unbounded();
        TableSequence top, bottom;
        for (std::size_t i = 0; i < k; ++i) {
            top.append(supply.draw(kAllSuits[layout.uniform(4)], false));
            bottom.append(supply.draw(kAllSuits[layout.uniform(4)], false));
        }
        std::multiset<std::pair<Suit, Suit>> before;
        for (std::size_t i = 0; i < k; ++i)
            before.insert({top.at(i).hidden_suit(), bottom.at(i).hidden_suit()});

        PileMatrix mat({std::move(top), std::move(bottom)});
        Transcript tr(false);
        pile_shifting_shuffle(mat, rng, tr);

        std::multiset<std::pair<Suit, Suit>> after;
        for (std::size_t i = 0; i < k; ++i)
            after.insert({mat.row(0).at(i).hidden_suit(), mat.row(1).at(i).hidden_suit()});
        CHECK(before == after);
    }
}

TEST_CASE("pile-shifting shuffle rejects zero columns") {
    PileMatrix mat({TableSequence{}, TableSequence{}});
    Transcript tr;
    SeededRandomSource rng(1);
    CHECK_THROWS_AS(pile_shifting_shuffle(mat, rng, tr), MisuseError);
}

TEST_CASE("reveal returns the suit and records it") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(supply, {Suit::Diamond});
    Transcript tr;
    CHECK(reveal(seq, 0, tr) == Suit::Diamond);
    CHECK(tr.events().back() == Event{EventKind::Reveal, 0, 0, Suit::Diamond});
    CHECK_THROWS_AS(reveal(seq, 0, tr), MisuseError);
}

TEST_CASE("positions are taken modulo the length") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(supply, {Suit::Club, Suit::Heart, Suit::Diamond});
    Transcript tr;
    CHECK(reveal(seq, 5, tr) == Suit::Diamond);  // 5 mod 3 = 2
    CHECK(tr.events().back().a == 2);
}

TEST_CASE("turn_all_face_down is idempotent and hides everything") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(supply, {Suit::Club, Suit::Heart, Suit::Spade}, true);
    turn_all_face_down(seq);
    for (const auto& v : seq.observer_view()) CHECK(!v.has_value());
    turn_all_face_down(seq);
    CHECK(seq.size() == 3);
}

TEST_CASE("replace_with_supply swaps cards and conserves totals") {
    DeckCounts initial;
    initial[Suit::Club] = 1;
    initial[Suit::Spade] = 1;
    Supply supply = Supply::bounded(initial);
    TableSequence seq;
    seq.append(supply.draw(Suit::Club, true));
    CHECK(supply.available(Suit::Spade) == 1);

    Transcript tr;
    replace_with_supply(seq, 0, Suit::Spade, supply, tr);
    CHECK(seq.at(0).hidden_suit() == Suit::Spade);
    CHECK(seq.at(0).face_up());
    CHECK(supply.available(Suit::Spade) == 0);
    CHECK(supply.available(Suit::Club) == 1);

    // Table plus supply is constant per suit.
    CHECK(supply.in_use()[Suit::Spade] == 1);
    CHECK(supply.in_use()[Suit::Club] == 0);

    turn_all_face_down(seq);
    CHECK_THROWS_AS(replace_with_supply(seq, 0, Suit::Club, supply, tr), MisuseError);
}

TEST_CASE("replace fails when the supply pile is empty") {
    DeckCounts initial;
    initial[Suit::Club] = 1;
    Supply supply = Supply::bounded(initial);
    TableSequence seq;
    seq.append(supply.draw(Suit::Club, true));
    Transcript tr;
    CHECK_THROWS_AS(replace_with_supply(seq, 0, Suit::Spade, supply, tr), SupplyError);
}

TEST_CASE("remove_card shortens the sequence and keeps the order") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(
        supply, {Suit::Club, Suit::Heart, Suit::Spade, Suit::Diamond, Suit::Heart,
                 Suit::Club, Suit::Heart, Suit::Spade, Suit::Diamond, Suit::Heart});
    Transcript tr;
    reveal(seq, 3, tr);
    remove_card(seq, 3, supply, tr);
    CHECK(seq.size() == 9);
    CHECK(hidden_suits(seq) ==
          std::vector<Suit>{Suit::Club, Suit::Heart, Suit::Spade, Suit::Heart, Suit::Club,
                            Suit::Heart, Suit::Spade, Suit::Diamond, Suit::Heart});
    CHECK_THROWS_AS(remove_card(seq, 0, supply, tr), MisuseError);  // face down
}

TEST_CASE("rotate_public puts a chosen card on the right") {
    Supply supply = Supply::unbounded();
    TableSequence seq = make_seq(supply, {Suit::Spade, Suit::Diamond, Suit::Heart}, true);
    Transcript tr;
    rotate_public(seq, 1, tr);
    CHECK(hidden_suits(seq) == std::vector<Suit>{Suit::Heart, Suit::Spade, Suit::Diamond});

    rotate_public(seq, 0, tr);
    CHECK(hidden_suits(seq) == std::vector<Suit>{Suit::Heart, Suit::Spade, Suit::Diamond});
    rotate_public(seq, 3, tr);
    CHECK(hidden_suits(seq) == std::vector<Suit>{Suit::Heart, Suit::Spade, Suit::Diamond});

    turn_all_face_down(seq);
    CHECK_THROWS_AS(rotate_public(seq, 1, tr), MisuseError);
}

TEST_CASE("supply refuses to go negative and tracks peaks") {
    DeckCounts initial;
    initial[Suit::Heart] = 2;
    Supply supply = Supply::bounded(initial);
    TableCard a = supply.draw(Suit::Heart, false);
    TableCard b = supply.draw(Suit::Heart, false);
    CHECK_THROWS_AS(supply.draw(Suit::Heart, false), SupplyError);
    supply.give_back(a);
    supply.give_back(b);
    CHECK(supply.available(Suit::Heart) == 2);
    CHECK(supply.peak_in_use()[Suit::Heart] == 2);
    CHECK(supply.in_use()[Suit::Heart] == 0);
}

TEST_CASE("transcript lines match the wire format") {
    Transcript tr;
    tr.reveal(4, Suit::Heart);
    tr.shuffle(ShuffleKind::Pile, 13);
    tr.place(2, false);
    tr.place(2, true);
    tr.replace(7, Suit::Spade);
    tr.remove(3);
    tr.rotate(9);
    tr.verdict(Verdict::Accept);
    CHECK(tr.to_text() ==
          "REVEAL 4 HEART\n"
          "SHUFFLE PILE 13\n"
          "PLACE 2 DOWN\n"
          "PLACE 2 UP\n"
          "REPLACE 7 SPADE\n"
          "REMOVE 3\n"
          "ROTATE 9\n"
          "VERDICT ACCEPT\n");
}

TEST_CASE("shuffle events never carry the shift value") {
    // Identical shuffle lines no matter which hidden shift was drawn.
    std::set<std::string> lines;
    for (std::uint64_t forced = 0; forced < 5; ++forced) {
        Supply supply = Supply::unbounded();
        TableSequence seq = make_seq(
            supply, {Suit::Club, Suit::Heart, Suit::Spade, Suit::Diamond, Suit::Heart});
        Transcript tr;
        ScriptedRandomSource rng({forced});
        random_cut(seq, rng, tr);
        REQUIRE(tr.events().size() == 1);
        lines.insert(event_to_line(tr.events()[0]));
    }
    CHECK(lines == std::set<std::string>{"SHUFFLE CUT 5"});
}

TEST_CASE("seeded draws are deterministic and uniform") {
    SeededRandomSource a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform(1 + i % 13) == b.uniform(1 + i % 13));

    SeededRandomSource rng(7);
    std::vector<std::uint64_t> counts(7, 0);
    for (int i = 0; i < 35000; ++i) ++counts[rng.uniform(7)];
    CHECK(chi_square_uniform(counts).p_value >= 0.01);
}

TEST_CASE("scripted source validates its script") {
    ScriptedRandomSource rng({2, 9});
    CHECK(rng.uniform(3) == 2);
    CHECK_THROWS_AS(rng.uniform(4), MisuseError);  // 9 out of range
    ScriptedRandomSource empty({});
    CHECK_THROWS_AS(empty.uniform(2), ScriptExhausted);
    CHECK(empty.uniform(1) == 0);  // single-value draws consume nothing
}
