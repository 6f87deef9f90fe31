#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "zknono/nonogram.hpp"
#include "zknono/subprotocols.hpp"
#include "zknono/table.hpp"

namespace zknono {

enum class LineRole { Row, Column };

/// Verification context for one line. Rows read clubs as black and hearts as
/// white; columns use the commitments' right-hand cards, whose suits run the
/// opposite way, so the roles flip.
struct LineContext {
    LineRole role;
    int length;  // number of cells in the line
    Clue clue;

    Suit black_suit() const { return role == LineRole::Row ? Suit::Club : Suit::Heart; }
    Suit white_suit() const { return role == LineRole::Row ? Suit::Heart : Suit::Club; }
};

// --- Resource accounting ----------------------------------------------------

/// Closed-form card requirement of a full run: 2mn + 2max(m,n) + 6.
int expected_card_count(int m, int n);

/// Closed-form shuffle count of an accepting run: mn + 2m + 2n + 2w, where w
/// is the number of white cells in the committed solution.
std::uint64_t expected_shuffle_count(int m, int n, int w);

/// Nominal deck: mn+1 clubs, mn+max(m,n)+4 hearts, max(m,n) spades, one
/// diamond. Totals expected_card_count(m, n).
DeckCounts protocol_deck(int m, int n);

struct ResourceLedger {
    DeckCounts initial_deck;
    DeckCounts peak_in_use;
    std::uint64_t shuffles = 0;
    std::uint64_t expected_shuffles = 0;
    /// Clubs the run needed beyond the nominal deck. Zero for every
    /// solution with at least two black cells; degenerate near-empty grids
    /// need up to two extra clubs for the column end caps (see README).
    std::int64_t extra_clubs = 0;
};

/// How the run's supply is stocked.
enum class DeckPolicy {
    Exact,      ///< exactly the nominal deck; underflow throws SupplyError
    Auto,       ///< nominal deck plus the degenerate-case club top-up
    Unbounded,  ///< no limits (adversary searches)
};

class TableSequence;

/// Test hook: observe the hidden line state at phase boundaries.
struct LineInspector {
    virtual ~LineInspector() = default;
    virtual void on_phase_end(int phase, const TableSequence& seq) = 0;
};

struct RunConfig {
    DeckPolicy deck = DeckPolicy::Auto;
    /// When set, stock the supply with exactly this composition instead.
    std::optional<DeckCounts> custom_deck;
    bool record_transcript = true;
    /// Deliberately sloppy variant for the leak-detection self-check: the
    /// final round of each line's first phase leaves its cards face up, so
    /// the next shuffle exposes them. Never set in honest use.
    bool leaky_skip_turn_down = false;
    /// Assert after every chosen cut that the prover's believed card map
    /// matches the ground truth.
    bool check_prover_alignment = true;
    LineInspector* inspector = nullptr;
};

enum class RejectReason {
    FormatReject,
    MarkerReject,
    Phase1Mismatch,
    Phase2Mismatch,
    Phase3Mismatch,
};

const char* reject_reason_name(RejectReason r);

// --- Prover -----------------------------------------------------------------

/// The prover's secret per-cell placements. Honest placements encode a grid;
/// arbitrary suit pairs over {club, heart} are representable for adversary
/// simulation.
struct Placements {
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<Suit, Suit>> pairs;  // row-major

    static Placements from_grid(const Grid& g);

    const std::pair<Suit, Suit>& at(int r, int c) const {
        return pairs[static_cast<std::size_t>(r) * cols + c];
    }
    bool all_well_formed() const;
    int black_pair_count() const;
    int white_pair_count() const;
};

/// Decision interface of the prover within one line verification. The
/// verifier drives everything else.
class LineProver {
public:
    virtual ~LineProver() = default;

    /// The line sequence was just assembled in public order.
    virtual void line_built(const LineContext& ctx, const TableSequence& seq) = 0;

    /// Table position to slide the marker under for the next chosen cut.
    virtual std::size_t choose_cut_position(int phase, int round, std::size_t length) = 0;

    /// The marker surfaced at `marker_pos`; knowing where its own marker
    /// went in, the prover re-derives the hidden rotation from this.
    virtual void cut_result(std::size_t marker_pos) = 0;

    virtual void card_removed(std::size_t pos) = 0;

    /// A public replacement put a fresh card at `pos`.
    virtual void card_replaced(std::size_t pos, std::uint32_t new_tag) {
        (void)pos;
        (void)new_tag;
    }

    /// Believed card tags by position, for the alignment audit. Empty means
    /// the prover does not track them.
    virtual std::vector<std::uint32_t> believed_tags() const { return {}; }
};

/// The prover of the main protocol: selects block heads in phase order and
/// removes the leftmost eligible white card, tracking the hidden rotation
/// through marker reveals.
class HonestLineProver final : public LineProver {
public:
    HonestLineProver(const LineContext& ctx, std::vector<Cell> colors);

    void line_built(const LineContext& ctx, const TableSequence& seq) override;
    std::size_t choose_cut_position(int phase, int round, std::size_t length) override;
    void cut_result(std::size_t marker_pos) override;
    void card_removed(std::size_t pos) override;
    void card_replaced(std::size_t pos, std::uint32_t new_tag) override;
    std::vector<std::uint32_t> believed_tags() const override;

private:
    std::size_t position_of(std::uint32_t logical_id) const;

    LineContext ctx_;
    std::vector<Cell> colors_;
    std::vector<std::uint32_t> phase1_targets_;  // logical id of each block head
    std::vector<int> white_block_;               // white-block index per logical id, -1 otherwise
    std::vector<int> block_alive_;               // remaining cards per white block
    std::vector<bool> alive_;
    std::vector<std::uint32_t> believed_;        // logical id believed at each position
    std::vector<std::uint32_t> tags_by_logical_;
    std::size_t placed_pos_ = 0;
};

/// Supplies one LineProver per line of a full run.
class ProverDriver {
public:
    virtual ~ProverDriver() = default;
    virtual std::unique_ptr<LineProver> make_line_prover(const LineContext& ctx,
                                                         int index) = 0;
};

class HonestProverDriver final : public ProverDriver {
public:
    explicit HonestProverDriver(Grid grid) : grid_(std::move(grid)) {}
    std::unique_ptr<LineProver> make_line_prover(const LineContext& ctx, int index) override;

private:
    Grid grid_;
};

// --- Protocol ---------------------------------------------------------------

/// Assemble one line sequence: a white-role end cap, the cells' cards, a
/// second end cap, and the diamond end marker. `cells` must be face down.
TableSequence build_line_sequence(const LineContext& ctx, std::vector<TableCard> cells,
                                  Supply& supply, Transcript& tr);

struct LineOutcome {
    bool passed = false;
    std::optional<RejectReason> reason;
};

/// Run the three verification phases on one built line. All of the line's
/// cards end up back in the supply, pass or fail.
LineOutcome verify_line(const LineContext& ctx, TableSequence seq, LineProver& prover,
                        Supply& supply, RandomSource& rng, Transcript& tr,
                        const RunConfig& cfg);

struct RunResult {
    Verdict verdict = Verdict::Reject;
    std::optional<RejectReason> reject_reason;
    std::uint64_t failing_event_index = 0;  // index of the failing check's event
    Transcript transcript;
    ResourceLedger ledger;
};

/// Full protocol with an explicit placement matrix and prover driver.
RunResult run_protocol(const Puzzle& puzzle, const Placements& placements,
                       ProverDriver& driver, RandomSource& rng, const RunConfig& cfg = {});

/// Full protocol with the honest prover committing `prover_grid`.
RunResult run_full_protocol(const Puzzle& puzzle, const Grid& prover_grid,
                            RandomSource& rng, const RunConfig& cfg = {});

}  // namespace zknono
