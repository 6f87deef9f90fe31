#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zknono/errors.hpp"

namespace zknono {

enum class Cell : std::uint8_t { White = 0, Black = 1 };

/// Block lengths for one line, left to right (top to bottom for columns).
/// An empty block list means the line has no black cell; it serializes as a
/// single `0`.
struct Clue {
    std::vector<int> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }
    int sum() const;
    /// Minimal line length that can realize this clue.
    int min_length() const;
    bool feasible_for(int line_length) const { return min_length() <= line_length; }

    bool operator==(const Clue&) const = default;
};

/// Run lengths of the maximal black runs in a line, in order.
Clue derive_line_clue(const std::vector<Cell>& line);

class Grid {
public:
    Grid(int rows, int cols, Cell fill = Cell::White);

    int rows() const { return m_; }
    int cols() const { return n_; }
    Cell at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * n_ + c]; }
    void set(int r, int c, Cell v) { cells_[static_cast<std::size_t>(r) * n_ + c] = v; }

    std::vector<Cell> row_line(int r) const;
    std::vector<Cell> col_line(int c) const;
    int black_count() const;

    bool operator==(const Grid&) const = default;

private:
    int m_, n_;
    std::vector<Cell> cells_;
};

struct Puzzle {
    int rows = 0;
    int cols = 0;
    std::vector<Clue> row_clues;
    std::vector<Clue> col_clues;

    /// Validates all invariants: positive dimensions, per-line feasibility,
    /// and matching black-cell totals between row and column clues.
    static Puzzle create(int rows, int cols, std::vector<Clue> row_clues,
                         std::vector<Clue> col_clues);

    int black_total() const;
    int cell_count() const { return rows * cols; }

    bool operator==(const Puzzle&) const = default;
};

/// The puzzle whose clues are read off `g` (which is then one of its
/// solutions by construction).
Puzzle puzzle_from_grid(const Grid& g);

/// True iff every row and column of `g` realizes the corresponding clue.
/// Throws MisuseError if dimensions do not match.
bool check_solution(const Puzzle& p, const Grid& g);

/// All solutions, in row-major lexicographic order (white before black),
/// stopping after `limit`. Guarded to instances of at most 25 cells: this is
/// the transparent ground-truth oracle, not a real solver.
std::vector<Grid> solve_brute_force(const Puzzle& p, std::size_t limit = SIZE_MAX);

inline constexpr int kBruteForceCellGuard = 25;

// Text formats.
//
// Puzzle: first line `m n`, then m row-clue lines (top to bottom), then n
// column-clue lines (left to right); each clue line holds space-separated
// block lengths, or a single `0` for an empty clue.
// Grid: m lines of n characters, '#' black and '.' white.
Puzzle parse_puzzle(std::string_view text);
std::string serialize_puzzle(const Puzzle& p);
Grid parse_grid(std::string_view text);
std::string serialize_grid(const Grid& g);

}  // namespace zknono
