#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zknono/protocol.hpp"

namespace zknono {

inline constexpr int kDefaultDepthBound = 64;
inline constexpr int kMaxSweepCells = 6;

/// A complete cheating-prover strategy: secret placements plus, when
/// line_scripts is set, an explicit choice script per line (rows top to
/// bottom, then columns left to right). Each script entry selects the j-th
/// surviving card in the line's original order for one chosen cut. Without
/// scripts the honest per-line behaviour is used, which requires well-formed
/// placements.
struct ProverStrategy {
    Placements placements;
    std::optional<std::vector<std::vector<std::size_t>>> line_scripts;
};

/// The strategy run_full_protocol uses by default.
ProverStrategy honest_strategy(const Grid& g);

/// Execute a strategy. Scripted strategies run with an unbounded supply by
/// default since a cheating prover is not what the deck formula is about.
RunResult run_with_strategy(const Puzzle& puzzle, const ProverStrategy& strategy,
                            RandomSource& rng, RunConfig cfg = {});

struct LineSearchStats {
    std::uint64_t paths = 0;
    std::uint32_t max_depth = 0;
};

/// Exhaustive backtracking over every chosen-cut choice of one line game.
/// All shuffles are forced to `shift`; the accept/reject outcome of a fixed
/// strategy does not depend on the shift (asserted by the sweep), so one
/// shift covers all. Returns an accepting script iff one exists.
std::optional<std::vector<std::size_t>> search_accepting_line(
    const LineContext& ctx, const std::vector<Suit>& cell_suits, int depth_bound,
    std::uint64_t shift, LineSearchStats& stats);

/// Count of accepting leaves over the same search space (does not stop at
/// the first accept).
std::uint64_t count_accepting_line_paths(const LineContext& ctx,
                                         const std::vector<Suit>& cell_suits,
                                         int depth_bound, std::uint64_t shift,
                                         LineSearchStats& stats);

/// Exhaustive search for an accepting strategy under the given placements.
/// Guarded to desk scale (every line at most 4 cells, at most 6 cells total).
std::optional<ProverStrategy> search_accepting_strategy(const Puzzle& puzzle,
                                                        const Placements& placements,
                                                        int depth_bound = kDefaultDepthBound);

struct Counterexample {
    std::string puzzle_text;
    std::string placements_text;
    std::string transcript_text;
};

struct SoundnessReport {
    int max_cells = 0;
    std::uint64_t puzzles = 0;
    std::uint64_t assignments = 0;
    std::uint64_t malformed_assignments = 0;
    std::uint64_t solution_assignments = 0;
    std::uint64_t invalid_assignments = 0;
    std::uint64_t line_games = 0;      // distinct line searches run
    std::uint64_t strategy_paths = 0;  // backtracking leaves over those searches
    std::uint64_t shift_replays = 0;   // paths re-explored under nonzero forced shifts
    std::uint64_t solutions_confirmed = 0;
    std::uint64_t accepting_found = 0;  // accepting strategies for non-solutions
    std::uint32_t max_depth = 0;
    std::vector<Counterexample> counterexamples;

    std::string to_text() const;
};

std::string placements_text(const Placements& p);

/// For every puzzle derivable from any grid of up to `max_cells` cells, and
/// every placement assignment over {club,heart} pairs, confirm that only
/// true solutions admit an accepting strategy. Malformed placements are
/// rejected by the format check with certainty (proven separately and
/// asserted here on both shifts), so they are counted without a search.
SoundnessReport soundness_sweep(int max_cells, int depth_bound = kDefaultDepthBound,
                                bool parallel = true);

}  // namespace zknono
