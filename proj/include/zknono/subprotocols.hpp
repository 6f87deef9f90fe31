#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zknono/nonogram.hpp"
#include "zknono/table.hpp"

namespace zknono {

/// Suit pair committed on a cell: (club, heart) encodes black, (heart, club)
/// encodes white under the row-side reading.
std::pair<Suit, Suit> commitment_pair(Cell color);

/// A face-down two-card pair encoding one cell color by suit order.
/// Malformed pairs (two equal suits) are representable so cheating setups
/// can be simulated; they never survive a format check.
class Commitment {
public:
    /// Honest placement for a cell color. Emits one face-down placement.
    static Commitment make(Cell color, Supply& supply, Transcript& tr);

    /// Arbitrary (possibly malformed) placement, same observable footprint.
    static Commitment make_pair(Suit first, Suit second, Supply& supply, Transcript& tr);

    /// Rebind two cards already on the table as a commitment (gadget output).
    static Commitment from_cards(TableCard first, TableCard second) {
        return Commitment(first, second);
    }

    const TableCard& first() const { return first_; }
    const TableCard& second() const { return second_; }
    TableCard take_first() { return first_; }
    TableCard take_second() { return second_; }

    bool well_formed() const;
    std::optional<Cell> encoded_color() const;

private:
    Commitment(TableCard first, TableCard second) : first_(first), second_(second) {}

    TableCard first_;
    TableCard second_;
};

// --- Format verification ----------------------------------------------------
//
// Two-row variant of the copy gadget: the commitment forms the first row of a
// 2x2 matrix, a public club/heart pair the second. After a pile-shifting
// shuffle the first row is revealed; a well-formed commitment shows
// club-heart or heart-club (each with probability 1/2 regardless of the
// committed value), a malformed one is exposed with certainty. The second
// row, swapped iff heart-club was revealed, now carries the original value
// and becomes the output; the revealed cards go back to the supply.

struct FormatCheckResult {
    bool ok = false;
    std::optional<Commitment> out;  // present iff ok
};

FormatCheckResult verify_format(Commitment input, Supply& supply, RandomSource& rng,
                                Transcript& tr);

// --- Commitment copy --------------------------------------------------------
//
// Three-row variant: two public club/heart helper rows below the commitment.
// Both helper rows end up carrying the committed value, yielding two copies.
// Rejects malformed input exactly like the format check.

struct CopyResult {
    bool ok = false;
    std::optional<Commitment> a;
    std::optional<Commitment> b;
};

CopyResult copy_commitment(Commitment input, Supply& supply, RandomSource& rng,
                           Transcript& tr);

// --- Chosen cut -------------------------------------------------------------
//
// Lets the prover single out the payload card at `secret_pos` without the
// position becoming correlated with anything observable. The prover lays a
// face-down helper row under the payload (hearts everywhere, one club under
// the target), the 2xk matrix is pile-shifted, and the helper row is
// revealed: the single club, uniform over all positions, marks where the
// target landed. Helper cards return to the supply.

struct ChosenCutOptions {
    /// Leave preconditions relaxed for deliberately sloppy protocol
    /// variants: face-up payload cards are tolerated (their post-shuffle
    /// visibility leaks into the transcript) and turned down afterwards.
    bool allow_face_up_payload = false;
    /// Adversarial helper row composition (tests only). Must have the
    /// payload's length.
    std::optional<std::vector<Suit>> helper_override;
};

struct ChosenCutResult {
    bool ok = false;             // false: helper row did not show exactly one club
    std::size_t position = 0;    // where the club appeared
};

ChosenCutResult chosen_cut(TableSequence& seq, std::size_t secret_pos, Supply& supply,
                           RandomSource& rng, Transcript& tr,
                           const ChosenCutOptions& options = {});

}  // namespace zknono
