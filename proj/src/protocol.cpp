#include "zknono/protocol.hpp"

#include <algorithm>

namespace zknono {

int expected_card_count(int m, int n) { return 2 * m * n + 2 * std::max(m, n) + 6; }

std::uint64_t expected_shuffle_count(int m, int n, int w) {
    return static_cast<std::uint64_t>(m) * n + 2 * m + 2 * n + 2 * static_cast<std::uint64_t>(w);
}

DeckCounts protocol_deck(int m, int n) {
    const int mx = std::max(m, n);
    DeckCounts deck;
    deck[Suit::Club] = m * n + 1;
    deck[Suit::Heart] = m * n + mx + 4;
    deck[Suit::Spade] = mx;
    deck[Suit::Diamond] = 1;
    return deck;
}

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::FormatReject: return "format";
        case RejectReason::MarkerReject: return "marker";
        case RejectReason::Phase1Mismatch: return "phase1";
        case RejectReason::Phase2Mismatch: return "phase2";
        case RejectReason::Phase3Mismatch: return "phase3";
    }
    return "?";
}

Placements Placements::from_grid(const Grid& g) {
    Placements p;
    p.rows = g.rows();
    p.cols = g.cols();
    p.pairs.reserve(static_cast<std::size_t>(p.rows) * p.cols);
    for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c) p.pairs.push_back(commitment_pair(g.at(r, c)));
    return p;
}

bool Placements::all_well_formed() const {
    for (const auto& [a, b] : pairs)
        if (a == b || (a != Suit::Club && a != Suit::Heart) ||
            (b != Suit::Club && b != Suit::Heart))
            return false;
    return true;
}

int Placements::black_pair_count() const {
    int count = 0;
    for (const auto& [a, b] : pairs) count += (a == Suit::Club && b == Suit::Heart);
    return count;
}

int Placements::white_pair_count() const {
    int count = 0;
    for (const auto& [a, b] : pairs) count += (a == Suit::Heart && b == Suit::Club);
    return count;
}

// --- HonestLineProver --------------------------------------------------------
//
// Logical ids run 0..L+2: 0 is the left end cap, 1..L the cells, L+1 the
// right end cap, L+2 the diamond. The prover plans in logical ids and maps
// them to table positions through `believed_`, which it keeps aligned with
// the table by reading each marker reveal: it knows where it slid the marker
// in, so the reveal position gives away the hidden shift (to the prover
// alone, since only the prover knows the input position).

HonestLineProver::HonestLineProver(const LineContext& ctx, std::vector<Cell> colors)
    : ctx_(ctx), colors_(std::move(colors)) {
    const int L = ctx_.length;
    const std::size_t total = static_cast<std::size_t>(L) + 3;

    white_block_.assign(total, -1);
    alive_.assign(total, true);

    int block = 0;
    bool in_black = false;
    auto mark_white = [&](std::size_t id) {
        if (in_black) {
            ++block;
            in_black = false;
        }
        white_block_[id] = block;
    };
    mark_white(0);
    for (int c = 0; c < L; ++c) {
        if (colors_[static_cast<std::size_t>(c)] == Cell::Black) {
            if (!in_black) phase1_targets_.push_back(static_cast<std::uint32_t>(c + 1));
            in_black = true;
        } else {
            mark_white(static_cast<std::size_t>(c + 1));
        }
    }
    mark_white(static_cast<std::size_t>(L + 1));
    block_alive_.assign(static_cast<std::size_t>(block + 1), 0);
    for (std::size_t id = 0; id < total; ++id)
        if (white_block_[id] >= 0) ++block_alive_[static_cast<std::size_t>(white_block_[id])];
}

void HonestLineProver::line_built(const LineContext&, const TableSequence& seq) {
    believed_.resize(seq.size());
    tags_by_logical_.resize(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        believed_[i] = static_cast<std::uint32_t>(i);
        tags_by_logical_[i] = seq.at(i).tag();
    }
}

std::size_t HonestLineProver::position_of(std::uint32_t logical_id) const {
    const auto it = std::find(believed_.begin(), believed_.end(), logical_id);
    if (it == believed_.end()) throw MisuseError("prover lost track of a card");
    return static_cast<std::size_t>(it - believed_.begin());
}

std::size_t HonestLineProver::choose_cut_position(int phase, int round, std::size_t) {
    // When the committed line does not actually fit the clue, the planned
    // selections run out; any deterministic pick keeps the prover moving and
    // leaves the rejection to the verifier's reveals.
    if (phase == 1) {
        if (static_cast<std::size_t>(round) < phase1_targets_.size()) {
            placed_pos_ = position_of(phase1_targets_[static_cast<std::size_t>(round)]);
            return placed_pos_;
        }
        placed_pos_ = 0;
        return placed_pos_;
    }
    // Phase 2: leftmost (in logical order) surviving white card whose block
    // still holds at least two.
    for (std::size_t id = 0; id < alive_.size(); ++id) {
        if (!alive_[id] || white_block_[id] < 0) continue;
        if (block_alive_[static_cast<std::size_t>(white_block_[id])] < 2) continue;
        placed_pos_ = position_of(static_cast<std::uint32_t>(id));
        return placed_pos_;
    }
    placed_pos_ = 0;
    return placed_pos_;
}

void HonestLineProver::cut_result(std::size_t marker_pos) {
    const std::size_t len = believed_.size();
    const std::size_t shift = (marker_pos + len - placed_pos_) % len;
    std::rotate(believed_.begin(), believed_.end() - static_cast<std::ptrdiff_t>(shift),
                believed_.end());
}

void HonestLineProver::card_removed(std::size_t pos) {
    const std::uint32_t id = believed_[pos];
    alive_[id] = false;
    if (white_block_[id] >= 0) --block_alive_[static_cast<std::size_t>(white_block_[id])];
    believed_.erase(believed_.begin() + static_cast<std::ptrdiff_t>(pos));
}

void HonestLineProver::card_replaced(std::size_t pos, std::uint32_t new_tag) {
    tags_by_logical_[believed_[pos]] = new_tag;
}

std::vector<std::uint32_t> HonestLineProver::believed_tags() const {
    std::vector<std::uint32_t> tags(believed_.size());
    for (std::size_t i = 0; i < believed_.size(); ++i)
        tags[i] = tags_by_logical_[believed_[i]];
    return tags;
}

std::unique_ptr<LineProver> HonestProverDriver::make_line_prover(const LineContext& ctx,
                                                                 int index) {
    std::vector<Cell> colors = ctx.role == LineRole::Row ? grid_.row_line(index)
                                                         : grid_.col_line(index);
    return std::make_unique<HonestLineProver>(ctx, std::move(colors));
}

// --- Line verification -------------------------------------------------------

TableSequence build_line_sequence(const LineContext& ctx, std::vector<TableCard> cells,
                                  Supply& supply, Transcript& tr) {
    if (static_cast<int>(cells.size()) != ctx.length)
        throw MisuseError("cell card count does not match the line length");
    for (const TableCard& c : cells)
        if (c.face_up()) throw MisuseError("line cells must be face down");

    tr.place(static_cast<std::uint32_t>(cells.size()), false);
    TableSequence seq;
    seq.append(supply.draw(ctx.white_suit(), false));
    for (TableCard& c : cells) seq.append(c);
    seq.append(supply.draw(ctx.white_suit(), false));
    tr.place(2, false);
    seq.append(supply.draw(Suit::Diamond, false));
    tr.place(1, false);
    return seq;
}

namespace {

void audit_alignment(const LineProver& prover, const TableSequence& seq,
                     const RunConfig& cfg) {
    if (!cfg.check_prover_alignment) return;
    const std::vector<std::uint32_t> tags = prover.believed_tags();
    if (tags.empty()) return;
    if (tags.size() != seq.size()) throw MisuseError("prover alignment lost (size)");
    for (std::size_t i = 0; i < tags.size(); ++i)
        if (tags[i] != seq.at(i).tag()) throw MisuseError("prover alignment lost");
}

void return_sequence(TableSequence& seq, Supply& supply) {
    for (TableCard& c : seq.cards()) supply.give_back(c);
    seq.cards().clear();
}

}  // namespace

LineOutcome verify_line(const LineContext& ctx, TableSequence seq, LineProver& prover,
                        Supply& supply, RandomSource& rng, Transcript& tr,
                        const RunConfig& cfg) {
    prover.line_built(ctx, seq);

    const Suit black = ctx.black_suit();
    const Suit white = ctx.white_suit();
    const int k = ctx.clue.block_count();
    const int X = ctx.clue.sum();

    auto fail = [&](RejectReason reason) {
        return_sequence(seq, supply);
        return LineOutcome{false, reason};
    };

    ChosenCutOptions cut_options;
    cut_options.allow_face_up_payload = cfg.leaky_skip_turn_down;

    // Phase 1: exhibit each block's length, converting its cards to spades.
    for (int i = 0; i < k; ++i) {
        const int x = ctx.clue.blocks[static_cast<std::size_t>(i)];
        const std::size_t len = seq.size();
        const std::size_t pos = prover.choose_cut_position(1, i, len) % len;
        const ChosenCutResult cut = chosen_cut(seq, pos, supply, rng, tr, cut_options);
        if (!cut.ok) return fail(RejectReason::MarkerReject);
        prover.cut_result(cut.position);
        audit_alignment(prover, seq, cfg);

        const std::size_t p = cut.position;
        for (int t = 0; t < x; ++t)
            if (reveal(seq, p + static_cast<std::size_t>(t), tr) != black)
                return fail(RejectReason::Phase1Mismatch);
        if (reveal(seq, p + len - 1, tr) != white) return fail(RejectReason::Phase1Mismatch);
        if (reveal(seq, p + static_cast<std::size_t>(x), tr) != white)
            return fail(RejectReason::Phase1Mismatch);
        for (int t = 0; t < x; ++t) {
            const std::size_t at = p + static_cast<std::size_t>(t);
            replace_with_supply(seq, at, Suit::Spade, supply, tr);
            prover.card_replaced(seq.mod(at), seq.at(at).tag());
        }

        const bool keep_face_up = cfg.leaky_skip_turn_down && i == k - 1;
        if (!keep_face_up) turn_all_face_down(seq);
    }
    if (cfg.inspector) cfg.inspector->on_phase_end(1, seq);

    // Phase 2: shrink every white run to a single card.
    const int rounds = ctx.length - X - k + 1;
    for (int round = 0; round < rounds; ++round) {
        const std::size_t len = seq.size();
        const std::size_t pos = prover.choose_cut_position(2, round, len) % len;
        const ChosenCutResult cut = chosen_cut(seq, pos, supply, rng, tr, cut_options);
        if (!cut.ok) return fail(RejectReason::MarkerReject);
        prover.cut_result(cut.position);
        audit_alignment(prover, seq, cfg);

        if (reveal(seq, cut.position, tr) != white) return fail(RejectReason::Phase2Mismatch);
        remove_card(seq, cut.position, supply, tr);
        prover.card_removed(cut.position);
    }
    if (cfg.inspector) cfg.inspector->on_phase_end(2, seq);

    // Phase 3: one random cut, full reveal, diamond to the right, pattern check.
    random_cut(seq, rng, tr);
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (!seq.at(i).face_up()) reveal(seq, i, tr);

    std::size_t diamond_pos = seq.size();
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq.at(i).hidden_suit() == Suit::Diamond) diamond_pos = i;
    if (diamond_pos == seq.size()) return fail(RejectReason::Phase3Mismatch);
    rotate_public(seq, (seq.size() - 1 - diamond_pos) % seq.size(), tr);

    std::vector<Suit> expected;
    expected.push_back(white);
    for (int x : ctx.clue.blocks) {
        for (int t = 0; t < x; ++t) expected.push_back(Suit::Spade);
        expected.push_back(white);
    }
    expected.push_back(Suit::Diamond);

    if (expected.size() != seq.size()) return fail(RejectReason::Phase3Mismatch);
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (seq.at(i).hidden_suit() != expected[i]) return fail(RejectReason::Phase3Mismatch);

    return_sequence(seq, supply);
    return LineOutcome{true, std::nullopt};
}

// --- Full protocol -----------------------------------------------------------

namespace {

struct CellCards {
    std::optional<TableCard> row_side;
    std::optional<TableCard> col_side;
};

Supply make_supply(const Puzzle& puzzle, const Placements& placements,
                   const RunConfig& cfg) {
    if (cfg.custom_deck) return Supply::bounded(*cfg.custom_deck);
    const DeckPolicy policy = cfg.deck;
    switch (policy) {
        case DeckPolicy::Unbounded: return Supply::unbounded();
        case DeckPolicy::Exact: return Supply::bounded(protocol_deck(puzzle.rows, puzzle.cols));
        case DeckPolicy::Auto: {
            DeckCounts deck = protocol_deck(puzzle.rows, puzzle.cols);
            const std::int64_t top_up =
                std::max<std::int64_t>(0, 2 - placements.black_pair_count());
            deck[Suit::Club] += top_up;
            return Supply::bounded(deck);
        }
    }
    throw MisuseError("bad deck policy");
}

}  // namespace

RunResult run_protocol(const Puzzle& puzzle, const Placements& placements,
                       ProverDriver& driver, RandomSource& rng, const RunConfig& cfg) {
    const int m = puzzle.rows, n = puzzle.cols;
    if (placements.rows != m || placements.cols != n)
        throw MisuseError("placement dimensions do not match the puzzle");

    RunResult result;
    result.transcript = Transcript(cfg.record_transcript);
    Transcript& tr = result.transcript;
    Supply supply = make_supply(puzzle, placements, cfg);

    auto finish = [&](Verdict verdict, std::optional<RejectReason> reason) -> RunResult& {
        if (reason) result.failing_event_index = tr.total_emitted() - 1;
        tr.verdict(verdict);
        result.verdict = verdict;
        result.reject_reason = reason;
        result.ledger.initial_deck = supply.initial();
        result.ledger.peak_in_use = supply.peak_in_use();
        result.ledger.shuffles = tr.shuffle_count();
        result.ledger.expected_shuffles =
            placements.all_well_formed()
                ? expected_shuffle_count(m, n, placements.white_pair_count())
                : 0;
        result.ledger.extra_clubs =
            supply.is_bounded() ? supply.initial()[Suit::Club] - (m * n + 1) : 0;
        return result;
    };

    // Commitment placement, row-major.
    std::vector<Commitment> commitments;
    commitments.reserve(static_cast<std::size_t>(m) * n);
    for (const auto& [a, b] : placements.pairs)
        commitments.push_back(Commitment::make_pair(a, b, supply, tr));

    // Per-cell format verification; the surviving pair provides one card for
    // the cell's row and one for its column.
    std::vector<CellCards> cells(static_cast<std::size_t>(m) * n);
    for (std::size_t i = 0; i < commitments.size(); ++i) {
        FormatCheckResult check = verify_format(std::move(commitments[i]), supply, rng, tr);
        if (!check.ok) return finish(Verdict::Reject, RejectReason::FormatReject);
        cells[i].row_side = check.out->take_first();
        cells[i].col_side = check.out->take_second();
    }
    commitments.clear();

    // Rows top to bottom, then columns left to right.
    for (int r = 0; r < m; ++r) {
        const LineContext ctx{LineRole::Row, n, puzzle.row_clues[static_cast<std::size_t>(r)]};
        std::vector<TableCard> line;
        line.reserve(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c)
            line.push_back(*std::exchange(cells[static_cast<std::size_t>(r) * n + c].row_side,
                                          std::nullopt));
        auto prover = driver.make_line_prover(ctx, r);
        TableSequence seq = build_line_sequence(ctx, std::move(line), supply, tr);
        const LineOutcome outcome = verify_line(ctx, std::move(seq), *prover, supply, rng, tr, cfg);
        if (!outcome.passed) return finish(Verdict::Reject, outcome.reason);
    }
    for (int c = 0; c < n; ++c) {
        const LineContext ctx{LineRole::Column, m,
                              puzzle.col_clues[static_cast<std::size_t>(c)]};
        std::vector<TableCard> line;
        line.reserve(static_cast<std::size_t>(m));
        for (int r = 0; r < m; ++r)
            line.push_back(*std::exchange(cells[static_cast<std::size_t>(r) * n + c].col_side,
                                          std::nullopt));
        auto prover = driver.make_line_prover(ctx, c);
        TableSequence seq = build_line_sequence(ctx, std::move(line), supply, tr);
        const LineOutcome outcome = verify_line(ctx, std::move(seq), *prover, supply, rng, tr, cfg);
        if (!outcome.passed) return finish(Verdict::Reject, outcome.reason);
    }

    return finish(Verdict::Accept, std::nullopt);
}

RunResult run_full_protocol(const Puzzle& puzzle, const Grid& prover_grid,
                            RandomSource& rng, const RunConfig& cfg) {
    if (prover_grid.rows() != puzzle.rows || prover_grid.cols() != puzzle.cols)
        throw MisuseError("grid dimensions do not match the puzzle");
    HonestProverDriver driver(prover_grid);
    return run_protocol(puzzle, Placements::from_grid(prover_grid), driver, rng, cfg);
}

}  // namespace zknono
