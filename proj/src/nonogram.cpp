#include "zknono/nonogram.hpp"

#include <numeric>
#include <sstream>

namespace zknono {

int Clue::sum() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }

int Clue::min_length() const {
    if (blocks.empty()) return 0;
    return sum() + block_count() - 1;
}

Clue derive_line_clue(const std::vector<Cell>& line) {
    Clue clue;
    int run = 0;
    for (Cell c : line) {
        if (c == Cell::Black) {
            ++run;
        } else if (run > 0) {
            clue.blocks.push_back(run);
            run = 0;
        }
    }
    if (run > 0) clue.blocks.push_back(run);
    return clue;
}

Grid::Grid(int rows, int cols, Cell fill)
    : m_(rows), n_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) throw MisuseError("grid dimensions must be positive");
}

std::vector<Cell> Grid::row_line(int r) const {
    std::vector<Cell> line(static_cast<std::size_t>(n_));
    for (int c = 0; c < n_; ++c) line[static_cast<std::size_t>(c)] = at(r, c);
    return line;
}

std::vector<Cell> Grid::col_line(int c) const {
    std::vector<Cell> line(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) line[static_cast<std::size_t>(r)] = at(r, c);
    return line;
}

int Grid::black_count() const {
    int count = 0;
    for (Cell c : cells_) count += (c == Cell::Black);
    return count;
}

Puzzle Puzzle::create(int rows, int cols, std::vector<Clue> row_clues,
                      std::vector<Clue> col_clues) {
    if (rows < 1 || cols < 1)
        throw ParseError(ParseErrorKind::BadDimensions, "puzzle dimensions must be positive");
    if (static_cast<int>(row_clues.size()) != rows ||
        static_cast<int>(col_clues.size()) != cols)
        throw ParseError(ParseErrorKind::BadDimensions, "clue count does not match dimensions");

    auto check_clues = [](const std::vector<Clue>& clues, int length, const char* what) {
        for (std::size_t i = 0; i < clues.size(); ++i) {
            for (int b : clues[i].blocks)
                if (b < 1)
                    throw ParseError(ParseErrorKind::InfeasibleClue,
                                     std::string(what) + " clue " + std::to_string(i + 1) +
                                         " has a non-positive block");
            if (!clues[i].feasible_for(length))
                throw ParseError(ParseErrorKind::InfeasibleClue,
                                 std::string(what) + " clue " + std::to_string(i + 1) +
                                     " does not fit in length " + std::to_string(length));
        }
    };
    check_clues(row_clues, cols, "row");
    check_clues(col_clues, rows, "column");

    int row_sum = 0, col_sum = 0;
    for (const Clue& c : row_clues) row_sum += c.sum();
    for (const Clue& c : col_clues) col_sum += c.sum();
    if (row_sum != col_sum)
        throw ParseError(ParseErrorKind::BlackCountMismatch,
                         "row clues count " + std::to_string(row_sum) +
                             " black cells but column clues count " + std::to_string(col_sum));

    Puzzle p;
    p.rows = rows;
    p.cols = cols;
    p.row_clues = std::move(row_clues);
    p.col_clues = std::move(col_clues);
    return p;
}

int Puzzle::black_total() const {
    int sum = 0;
    for (const Clue& c : row_clues) sum += c.sum();
    return sum;
}

Puzzle puzzle_from_grid(const Grid& g) {
    std::vector<Clue> row_clues, col_clues;
    row_clues.reserve(static_cast<std::size_t>(g.rows()));
    col_clues.reserve(static_cast<std::size_t>(g.cols()));
    for (int r = 0; r < g.rows(); ++r) row_clues.push_back(derive_line_clue(g.row_line(r)));
    for (int c = 0; c < g.cols(); ++c) col_clues.push_back(derive_line_clue(g.col_line(c)));
    return Puzzle::create(g.rows(), g.cols(), std::move(row_clues), std::move(col_clues));
}

bool check_solution(const Puzzle& p, const Grid& g) {
    if (g.rows() != p.rows || g.cols() != p.cols)
        throw MisuseError("grid dimensions do not match the puzzle");
    for (int r = 0; r < p.rows; ++r)
        if (derive_line_clue(g.row_line(r)) != p.row_clues[static_cast<std::size_t>(r)])
            return false;
    for (int c = 0; c < p.cols; ++c)
        if (derive_line_clue(g.col_line(c)) != p.col_clues[static_cast<std::size_t>(c)])
            return false;
    return true;
}

namespace {

// Row-by-row enumeration with per-row clue pruning; column clues are checked
// on complete grids. Enumeration order makes the output row-major
// lexicographic with white before black.
void enumerate_rows(const Puzzle& p, Grid& g, int row, std::size_t limit,
                    std::vector<Grid>& out) {
    if (out.size() >= limit) return;
    if (row == p.rows) {
        for (int c = 0; c < p.cols; ++c)
            if (derive_line_clue(g.col_line(c)) != p.col_clues[static_cast<std::size_t>(c)])
                return;
        out.push_back(g);
        return;
    }
    const std::uint32_t patterns = 1u << p.cols;
    for (std::uint32_t bits = 0; bits < patterns; ++bits) {
        for (int c = 0; c < p.cols; ++c)
            g.set(row, c, (bits >> (p.cols - 1 - c)) & 1u ? Cell::Black : Cell::White);
        if (derive_line_clue(g.row_line(row)) != p.row_clues[static_cast<std::size_t>(row)])
            continue;
        enumerate_rows(p, g, row + 1, limit, out);
        if (out.size() >= limit) return;
    }
}

}  // namespace

std::vector<Grid> solve_brute_force(const Puzzle& p, std::size_t limit) {
    if (p.cell_count() > kBruteForceCellGuard)
        throw GuardError("instance exceeds the " + std::to_string(kBruteForceCellGuard) +
                         "-cell brute-force guard");
    std::vector<Grid> out;
    Grid g(p.rows, p.cols);
    enumerate_rows(p, g, 0, limit, out);
    return out;
}

namespace {

std::vector<std::string> nonempty_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    if (!current.empty()) lines.push_back(current);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<int> parse_int_line(const std::string& line, const char* what) {
    std::istringstream in(line);
    std::vector<int> values;
    int v;
    while (in >> v) values.push_back(v);
    std::string rest;
    if (!in.eof()) {
        in.clear();
        in >> rest;
    }
    if (!rest.empty() || values.empty())
        throw ParseError(ParseErrorKind::MalformedLine,
                         std::string("malformed ") + what + " line: '" + line + "'");
    return values;
}

Clue parse_clue_line(const std::string& line, const char* what) {
    std::vector<int> values = parse_int_line(line, what);
    if (values.size() == 1 && values[0] == 0) return Clue{};
    for (int v : values)
        if (v < 1)
            throw ParseError(ParseErrorKind::MalformedLine,
                             std::string("malformed ") + what + " line: '" + line + "'");
    return Clue{std::move(values)};
}

}  // namespace

Puzzle parse_puzzle(std::string_view text) {
    const std::vector<std::string> lines = nonempty_lines(text);
    if (lines.empty())
        throw ParseError(ParseErrorKind::MalformedLine, "empty puzzle text");
    const std::vector<int> dims = parse_int_line(lines[0], "dimension");
    if (dims.size() != 2)
        throw ParseError(ParseErrorKind::MalformedLine,
                         "first line must hold exactly two numbers");
    const int m = dims[0], n = dims[1];
    if (m < 1 || n < 1)
        throw ParseError(ParseErrorKind::BadDimensions, "dimensions must be positive");
    if (static_cast<int>(lines.size()) != 1 + m + n)
        throw ParseError(ParseErrorKind::MalformedLine,
                         "expected " + std::to_string(1 + m + n) + " lines, got " +
                             std::to_string(lines.size()));
    std::vector<Clue> row_clues, col_clues;
    for (int r = 0; r < m; ++r)
        row_clues.push_back(parse_clue_line(lines[static_cast<std::size_t>(1 + r)], "row clue"));
    for (int c = 0; c < n; ++c)
        col_clues.push_back(
            parse_clue_line(lines[static_cast<std::size_t>(1 + m + c)], "column clue"));
    return Puzzle::create(m, n, std::move(row_clues), std::move(col_clues));
}

std::string serialize_puzzle(const Puzzle& p) {
    std::ostringstream out;
    out << p.rows << ' ' << p.cols << '\n';
    auto emit = [&out](const Clue& clue) {
        if (clue.blocks.empty()) {
            out << "0\n";
            return;
        }
        for (std::size_t i = 0; i < clue.blocks.size(); ++i)
            out << clue.blocks[i] << (i + 1 < clue.blocks.size() ? ' ' : '\n');
    };
    for (const Clue& c : p.row_clues) emit(c);
    for (const Clue& c : p.col_clues) emit(c);
    return out.str();
}

Grid parse_grid(std::string_view text) {
    const std::vector<std::string> lines = nonempty_lines(text);
    if (lines.empty()) throw ParseError(ParseErrorKind::MalformedLine, "empty grid text");
    const int m = static_cast<int>(lines.size());
    const int n = static_cast<int>(lines[0].size());
    if (n < 1) throw ParseError(ParseErrorKind::MalformedLine, "empty grid row");
    Grid g(m, n);
    for (int r = 0; r < m; ++r) {
        const std::string& line = lines[static_cast<std::size_t>(r)];
        if (static_cast<int>(line.size()) != n)
            throw ParseError(ParseErrorKind::BadDimensions,
                             "grid row " + std::to_string(r + 1) + " has wrong length");
        for (int c = 0; c < n; ++c) {
            const char ch = line[static_cast<std::size_t>(c)];
            if (ch == '#')
                g.set(r, c, Cell::Black);
            else if (ch == '.')
                g.set(r, c, Cell::White);
            else
                throw ParseError(ParseErrorKind::MalformedLine,
                                 std::string("bad grid character '") + ch + "'");
        }
    }
    return g;
}

std::string serialize_grid(const Grid& g) {
    std::string out;
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c)
            out += (g.at(r, c) == Cell::Black ? '#' : '.');
        out += '\n';
    }
    return out;
}

}  // namespace zknono
