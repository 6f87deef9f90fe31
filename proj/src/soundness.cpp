#include "zknono/soundness.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace zknono {

namespace {

struct NeedChoice {
    std::size_t length;
};

// Prover that replays a fixed choice script. Choices are indexes into the
// line's surviving cards in original order, so the same script expresses the
// same strategy under any forced shift; the believed map keeps the
// position bookkeeping honest.
class ScriptedLineProver final : public LineProver {
public:
    explicit ScriptedLineProver(const std::vector<std::size_t>& script,
                                bool throw_when_exhausted)
        : script_(script), throw_when_exhausted_(throw_when_exhausted) {}

    std::size_t consumed() const { return cursor_; }

    void line_built(const LineContext&, const TableSequence& seq) override {
        believed_.resize(seq.size());
        alive_.resize(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            believed_[i] = static_cast<std::uint32_t>(i);
            alive_[i] = static_cast<std::uint32_t>(i);
        }
    }

    std::size_t choose_cut_position(int, int, std::size_t length) override {
        if (cursor_ >= script_.size()) {
            if (throw_when_exhausted_) throw NeedChoice{length};
            throw MisuseError("strategy script exhausted");
        }
        const std::size_t ordinal = script_[cursor_++] % alive_.size();
        const std::uint32_t id = alive_[ordinal];
        const auto it = std::find(believed_.begin(), believed_.end(), id);
        placed_pos_ = static_cast<std::size_t>(it - believed_.begin());
        return placed_pos_;
    }

    void cut_result(std::size_t marker_pos) override {
        const std::size_t len = believed_.size();
        const std::size_t shift = (marker_pos + len - placed_pos_) % len;
        std::rotate(believed_.begin(), believed_.end() - static_cast<std::ptrdiff_t>(shift),
                    believed_.end());
    }

    void card_removed(std::size_t pos) override {
        const std::uint32_t id = believed_[pos];
        believed_.erase(believed_.begin() + static_cast<std::ptrdiff_t>(pos));
        alive_.erase(std::find(alive_.begin(), alive_.end(), id));
    }

private:
    const std::vector<std::size_t>& script_;
    bool throw_when_exhausted_;
    std::size_t cursor_ = 0;
    std::size_t placed_pos_ = 0;
    std::vector<std::uint32_t> believed_;
    std::vector<std::uint32_t> alive_;
};

class ScriptedProverDriver final : public ProverDriver {
public:
    explicit ScriptedProverDriver(const std::vector<std::vector<std::size_t>>& scripts)
        : scripts_(scripts) {}

    std::unique_ptr<LineProver> make_line_prover(const LineContext&, int) override {
        if (next_ >= scripts_.size()) throw MisuseError("missing line script");
        return std::make_unique<ScriptedLineProver>(scripts_[next_++], false);
    }

private:
    const std::vector<std::vector<std::size_t>>& scripts_;
    std::size_t next_ = 0;
};

Grid grid_from_placements(const Placements& p) {
    Grid g(p.rows, p.cols);
    for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c)
            g.set(r, c, p.at(r, c).first == Suit::Club ? Cell::Black : Cell::White);
    return g;
}

// One leaf of the line search: play the given script against a fresh line.
struct LineRun {
    LineOutcome outcome;
    std::size_t consumed = 0;
};

LineRun run_line_once(const LineContext& ctx, const std::vector<Suit>& cell_suits,
                      const std::vector<std::size_t>& script, std::uint64_t shift,
                      bool throw_when_exhausted) {
    Supply supply = Supply::unbounded();
    Transcript tr(false);
    FixedRandomSource rng(shift);
    std::vector<TableCard> cells;
    cells.reserve(cell_suits.size());
    for (Suit s : cell_suits) cells.push_back(supply.draw(s, false));
    TableSequence seq = build_line_sequence(ctx, std::move(cells), supply, tr);
    ScriptedLineProver prover(script, throw_when_exhausted);
    RunConfig cfg;
    cfg.record_transcript = false;
    LineRun result;
    result.outcome = verify_line(ctx, std::move(seq), prover, supply, rng, tr, cfg);
    result.consumed = prover.consumed();
    return result;
}

}  // namespace

namespace {

// Shared odometer driver. Visits every leaf of the line's choice tree;
// returns the first accepting script unless `count_all`, in which case it
// keeps going and tallies accepting leaves.
std::optional<std::vector<std::size_t>> drive_line_search(
    const LineContext& ctx, const std::vector<Suit>& cell_suits, int depth_bound,
    std::uint64_t shift, LineSearchStats& stats, bool count_all,
    std::uint64_t* accepting_count) {
    std::vector<std::pair<std::size_t, std::size_t>> frames;  // (choice, fan-out)
    std::vector<std::size_t> script;

    for (;;) {
        script.resize(frames.size());
        for (std::size_t i = 0; i < frames.size(); ++i) script[i] = frames[i].first;

        std::size_t consumed = 0;
        std::optional<LineOutcome> outcome;
        try {
            const LineRun run = run_line_once(ctx, cell_suits, script, shift, true);
            outcome = run.outcome;
            consumed = run.consumed;
        } catch (const NeedChoice& need) {
            if (static_cast<int>(frames.size()) >= depth_bound)
                throw GuardError("line search exceeded its depth bound");
            frames.emplace_back(0, need.length);
            continue;
        }

        ++stats.paths;
        stats.max_depth = std::max(stats.max_depth, static_cast<std::uint32_t>(consumed));
        if (outcome->passed) {
            if (!count_all) {
                script.resize(consumed);
                return script;
            }
            if (accepting_count) ++*accepting_count;
        } else if (outcome->reason != RejectReason::Phase1Mismatch &&
                   outcome->reason != RejectReason::Phase2Mismatch &&
                   outcome->reason != RejectReason::Phase3Mismatch) {
            // Within a line game the only rejection mechanism is a reveal
            // that fails a phase check; anything else is a harness bug.
            throw MisuseError("line game rejected outside a phase check");
        }

        frames.resize(consumed);
        while (!frames.empty() && frames.back().first + 1 == frames.back().second)
            frames.pop_back();
        if (frames.empty()) return std::nullopt;
        ++frames.back().first;
    }
}

}  // namespace

std::optional<std::vector<std::size_t>> search_accepting_line(
    const LineContext& ctx, const std::vector<Suit>& cell_suits, int depth_bound,
    std::uint64_t shift, LineSearchStats& stats) {
    return drive_line_search(ctx, cell_suits, depth_bound, shift, stats, false, nullptr);
}

std::uint64_t count_accepting_line_paths(const LineContext& ctx,
                                         const std::vector<Suit>& cell_suits,
                                         int depth_bound, std::uint64_t shift,
                                         LineSearchStats& stats) {
    std::uint64_t accepting = 0;
    drive_line_search(ctx, cell_suits, depth_bound, shift, stats, true, &accepting);
    return accepting;
}

ProverStrategy honest_strategy(const Grid& g) {
    return ProverStrategy{Placements::from_grid(g), std::nullopt};
}

RunResult run_with_strategy(const Puzzle& puzzle, const ProverStrategy& strategy,
                            RandomSource& rng, RunConfig cfg) {
    if (strategy.line_scripts) {
        cfg.deck = DeckPolicy::Unbounded;
        ScriptedProverDriver driver(*strategy.line_scripts);
        return run_protocol(puzzle, strategy.placements, driver, rng, cfg);
    }
    if (!strategy.placements.all_well_formed())
        throw MisuseError("honest strategy requires well-formed placements");
    HonestProverDriver driver(grid_from_placements(strategy.placements));
    return run_protocol(puzzle, strategy.placements, driver, rng, cfg);
}

namespace {

void check_desk_scale(const Puzzle& puzzle) {
    if (puzzle.cell_count() > kMaxSweepCells)
        throw GuardError("strategy search is guarded to 6 cells");
    if (puzzle.cols > 4 || puzzle.rows > 4)
        throw GuardError("strategy search is guarded to lines of 4 cells");
}

std::vector<Suit> line_suits(const Placements& p, LineRole role, int index) {
    std::vector<Suit> suits;
    if (role == LineRole::Row) {
        suits.reserve(static_cast<std::size_t>(p.cols));
        for (int c = 0; c < p.cols; ++c) suits.push_back(p.at(index, c).first);
    } else {
        suits.reserve(static_cast<std::size_t>(p.rows));
        for (int r = 0; r < p.rows; ++r) suits.push_back(p.at(r, index).second);
    }
    return suits;
}

struct LineGame {
    LineContext ctx;
    std::vector<Suit> cell_suits;

    std::string key() const {
        std::string k;
        k += (ctx.role == LineRole::Row ? 'R' : 'C');
        for (int b : ctx.clue.blocks) k += ' ' + std::to_string(b);
        k += '|';
        for (Suit s : cell_suits) k += static_cast<char>('0' + static_cast<int>(s));
        return k;
    }
};

std::vector<LineGame> assignment_games(const Puzzle& puzzle, const Placements& p) {
    std::vector<LineGame> games;
    for (int r = 0; r < puzzle.rows; ++r)
        games.push_back({{LineRole::Row, puzzle.cols,
                          puzzle.row_clues[static_cast<std::size_t>(r)]},
                         line_suits(p, LineRole::Row, r)});
    for (int c = 0; c < puzzle.cols; ++c)
        games.push_back({{LineRole::Column, puzzle.rows,
                          puzzle.col_clues[static_cast<std::size_t>(c)]},
                         line_suits(p, LineRole::Column, c)});
    return games;
}

// Searches one line game under shifts 0, 1 and 2 and insists the outcomes
// agree: a strategy's fate cannot depend on the hidden shifts.
struct CachedLineSearch {
    std::unordered_map<std::string, std::optional<std::vector<std::size_t>>> cache;
    std::uint64_t games = 0;
    std::uint64_t paths = 0;
    std::uint64_t shift_replays = 0;
    std::uint32_t max_depth = 0;

    const std::optional<std::vector<std::size_t>>& search(const LineGame& game,
                                                          int depth_bound) {
        const std::string key = game.key();
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;

        LineSearchStats base;
        auto result = search_accepting_line(game.ctx, game.cell_suits, depth_bound, 0, base);
        ++games;
        paths += base.paths;
        max_depth = std::max(max_depth, base.max_depth);

        for (std::uint64_t shift = 1; shift <= 2; ++shift) {
            LineSearchStats replay;
            auto again =
                search_accepting_line(game.ctx, game.cell_suits, depth_bound, shift, replay);
            shift_replays += replay.paths;
            if (again.has_value() != result.has_value() || replay.paths != base.paths)
                throw MisuseError("line search outcome depends on the hidden shift");
        }

        return cache.emplace(key, std::move(result)).first->second;
    }
};

// Malformed commitments die in the format check under both shifts. Assert it
// once per sweep rather than taking it on faith.
void assert_malformed_always_rejected() {
    for (const Suit s : {Suit::Club, Suit::Heart}) {
        for (std::uint64_t shift = 0; shift <= 1; ++shift) {
            Supply supply = Supply::unbounded();
            Transcript tr(false);
            FixedRandomSource rng(shift);
            Commitment bad = Commitment::make_pair(s, s, supply, tr);
            if (verify_format(std::move(bad), supply, rng, tr).ok)
                throw MisuseError("malformed commitment survived the format check");
        }
    }
}

SoundnessReport sweep_shape(int m, int n, int depth_bound) {
    SoundnessReport report;
    CachedLineSearch searcher;
    std::set<std::string> seen_puzzles;
    const int cells = m * n;

    for (std::uint32_t bits = 0; bits < (1u << cells); ++bits) {
        Grid g(m, n);
        for (int i = 0; i < cells; ++i)
            if ((bits >> i) & 1u) g.set(i / n, i % n, Cell::Black);
        const Puzzle puzzle = puzzle_from_grid(g);
        if (!seen_puzzles.insert(serialize_puzzle(puzzle)).second) continue;
        ++report.puzzles;

        const std::vector<Grid> solutions = solve_brute_force(puzzle);

        // Every placement assignment: 4 ordered suit pairs per cell.
        const std::uint64_t total = 1ull << (2 * cells);
        for (std::uint64_t code = 0; code < total; ++code) {
            ++report.assignments;
            Placements placements;
            placements.rows = m;
            placements.cols = n;
            placements.pairs.reserve(static_cast<std::size_t>(cells));
            for (int i = 0; i < cells; ++i) {
                const std::uint64_t pair_code = (code >> (2 * i)) & 3u;
                const Suit first = (pair_code & 1u) ? Suit::Heart : Suit::Club;
                const Suit second = (pair_code & 2u) ? Suit::Heart : Suit::Club;
                placements.pairs.emplace_back(first, second);
            }

            if (!placements.all_well_formed()) {
                ++report.malformed_assignments;
                continue;  // rejected by the format check with certainty
            }

            const Grid as_grid = grid_from_placements(placements);
            const bool is_solution =
                std::find(solutions.begin(), solutions.end(), as_grid) != solutions.end();

            std::optional<std::vector<std::vector<std::size_t>>> scripts;
            scripts.emplace();
            bool all_lines_accept = true;
            for (const LineGame& game : assignment_games(puzzle, placements)) {
                const auto& found = searcher.search(game, depth_bound);
                if (!found) {
                    all_lines_accept = false;
                    break;
                }
                scripts->push_back(*found);
            }

            if (is_solution) {
                ++report.solution_assignments;
                if (!all_lines_accept)
                    throw MisuseError("no accepting strategy found for a true solution");
                ++report.solutions_confirmed;
            } else {
                ++report.invalid_assignments;
                if (all_lines_accept) {
                    ++report.accepting_found;
                    ProverStrategy strategy{placements, std::move(*scripts)};
                    SeededRandomSource rng(0);
                    RunConfig cfg;
                    cfg.record_transcript = true;
                    RunResult run = run_with_strategy(puzzle, strategy, rng, cfg);
                    report.counterexamples.push_back({serialize_puzzle(puzzle),
                                                      placements_text(placements),
                                                      run.transcript.to_text()});
                }
            }
        }
    }

    report.line_games = searcher.games;
    report.strategy_paths = searcher.paths;
    report.shift_replays = searcher.shift_replays;
    report.max_depth = searcher.max_depth;
    return report;
}

void merge_into(SoundnessReport& total, SoundnessReport&& part) {
    total.puzzles += part.puzzles;
    total.assignments += part.assignments;
    total.malformed_assignments += part.malformed_assignments;
    total.solution_assignments += part.solution_assignments;
    total.invalid_assignments += part.invalid_assignments;
    total.line_games += part.line_games;
    total.strategy_paths += part.strategy_paths;
    total.shift_replays += part.shift_replays;
    total.solutions_confirmed += part.solutions_confirmed;
    total.accepting_found += part.accepting_found;
    total.max_depth = std::max(total.max_depth, part.max_depth);
    for (auto& ce : part.counterexamples) total.counterexamples.push_back(std::move(ce));
}

}  // namespace

std::optional<ProverStrategy> search_accepting_strategy(const Puzzle& puzzle,
                                                        const Placements& placements,
                                                        int depth_bound) {
    check_desk_scale(puzzle);
    if (placements.rows != puzzle.rows || placements.cols != puzzle.cols)
        throw MisuseError("placement dimensions do not match the puzzle");

    if (!placements.all_well_formed()) return std::nullopt;

    std::vector<std::vector<std::size_t>> scripts;
    for (const LineGame& game : assignment_games(puzzle, placements)) {
        LineSearchStats stats;
        auto found = search_accepting_line(game.ctx, game.cell_suits, depth_bound, 0, stats);
        if (!found) return std::nullopt;
        scripts.push_back(std::move(*found));
    }
    return ProverStrategy{placements, std::move(scripts)};
}

std::string placements_text(const Placements& p) {
    std::string out;
    auto letter = [](Suit s) {
        switch (s) {
            case Suit::Club: return 'C';
            case Suit::Heart: return 'H';
            case Suit::Spade: return 'S';
            case Suit::Diamond: return 'D';
        }
        return '?';
    };
    for (int r = 0; r < p.rows; ++r) {
        for (int c = 0; c < p.cols; ++c) {
            if (c > 0) out += ' ';
            out += letter(p.at(r, c).first);
            out += letter(p.at(r, c).second);
        }
        out += '\n';
    }
    return out;
}

std::string SoundnessReport::to_text() const {
    std::ostringstream out;
    out << "max-cells " << max_cells << '\n'
        << "puzzles " << puzzles << '\n'
        << "assignments " << assignments << '\n'
        << "malformed-assignments " << malformed_assignments << '\n'
        << "solution-assignments " << solution_assignments << '\n'
        << "invalid-assignments " << invalid_assignments << '\n'
        << "solutions-confirmed " << solutions_confirmed << '\n'
        << "line-games " << line_games << '\n'
        << "strategy-paths " << strategy_paths << '\n'
        << "shift-replays " << shift_replays << '\n'
        << "max-depth " << max_depth << '\n'
        << "accepting-strategies-for-invalid " << accepting_found << '\n';
    for (const Counterexample& ce : counterexamples) {
        out << "counterexample-puzzle\n" << ce.puzzle_text;
        out << "counterexample-placements\n" << ce.placements_text;
        out << "counterexample-transcript\n" << ce.transcript_text;
    }
    return out.str();
}

SoundnessReport soundness_sweep(int max_cells, int depth_bound, bool parallel) {
    if (max_cells < 1 || max_cells > kMaxSweepCells)
        throw GuardError("sweep is guarded to between 1 and 6 cells");

    assert_malformed_always_rejected();

    std::vector<std::pair<int, int>> shapes;
    for (int m = 1; m <= max_cells; ++m)
        for (int n = 1; n <= max_cells; ++n)
            if (m * n <= max_cells) shapes.emplace_back(m, n);

    SoundnessReport total;
    total.max_cells = max_cells;
    if (parallel) {
        std::vector<std::future<SoundnessReport>> futures;
        futures.reserve(shapes.size());
        for (const auto& [m, n] : shapes)
            futures.push_back(std::async(std::launch::async, sweep_shape, m, n, depth_bound));
        for (auto& f : futures) merge_into(total, f.get());
    } else {
        for (const auto& [m, n] : shapes) merge_into(total, sweep_shape(m, n, depth_bound));
    }
    return total;
}

}  // namespace zknono
