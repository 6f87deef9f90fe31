#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "zknono/nonogram.hpp"
#include "zknono/rng.hpp"

using namespace zknono;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kDataDir = ZKNONO_DATA_DIR;

std::vector<Cell> cells(std::initializer_list<int> bits) {
    std::vector<Cell> line;
    for (int b : bits) line.push_back(b ? Cell::Black : Cell::White);
    return line;
}

Grid grid_from_bits(int m, int n, std::uint32_t bits) {
    Grid g(m, n);
    for (int i = 0; i < m * n; ++i)
        if ((bits >> i) & 1u) g.set(i / n, i % n, Cell::Black);
    return g;
}

}  // namespace

TEST_CASE("derive_line_clue reads off maximal black runs") {
    CHECK(derive_line_clue(cells({1, 1, 0, 0, 0, 1, 1, 0, 0, 1})) ==
          Clue{{2, 2, 1}});
    CHECK(derive_line_clue(cells({0, 0, 0})) == Clue{});
    CHECK(derive_line_clue(cells({1, 1, 1, 0, 1, 1})) == Clue{{3, 2}});
    CHECK(derive_line_clue({}) == Clue{});
}

TEST_CASE("clue feasibility") {
    CHECK(Clue{{3, 2}}.min_length() == 6);
    CHECK(Clue{}.min_length() == 0);
    CHECK(Clue{{6}}.feasible_for(6));
    CHECK(!Clue{{6}}.feasible_for(5));
}

TEST_CASE("check_solution accepts the bundled 10x10 pair") {
    const Puzzle p = parse_puzzle(read_file(kDataDir + "/demo10.puzzle"));
    const Grid g = parse_grid(read_file(kDataDir + "/demo10.grid"));
    CHECK(p.rows == 10);
    CHECK(p.cols == 10);
    CHECK(p.black_total() == 50);
    CHECK(check_solution(p, g));

    const Grid all_white(10, 10);
    CHECK(!check_solution(p, all_white));

    const Grid wrong_size(3, 3);
    CHECK_THROWS_AS(check_solution(p, wrong_size), MisuseError);
}

TEST_CASE("1x1 forced instance") {
    const Puzzle p = Puzzle::create(1, 1, {Clue{{1}}}, {Clue{{1}}});
    Grid g(1, 1, Cell::Black);
    CHECK(check_solution(p, g));
    const auto solutions = solve_brute_force(p);
    REQUIRE(solutions.size() == 1);
    CHECK(solutions[0] == g);
}

TEST_CASE("2x2 oracle counts") {
    const Puzzle diagonals =
        Puzzle::create(2, 2, {Clue{{1}}, Clue{{1}}}, {Clue{{1}}, Clue{{1}}});
    CHECK(solve_brute_force(diagonals).size() == 2);

    const Puzzle full = Puzzle::create(2, 2, {Clue{{2}}, Clue{{2}}}, {Clue{{2}}, Clue{{2}}});
    const auto solutions = solve_brute_force(full);
    REQUIRE(solutions.size() == 1);
    CHECK(solutions[0].black_count() == 4);
}

TEST_CASE("oracle agrees with full enumeration on every small puzzle") {
    for (const auto& [m, n] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 3}}) {
        for (std::uint32_t bits = 0; bits < (1u << (m * n)); ++bits) {
            const Grid g = grid_from_bits(m, n, bits);
            const Puzzle p = puzzle_from_grid(g);
            std::vector<Grid> expected;
            for (std::uint32_t other = 0; other < (1u << (m * n)); ++other) {
                const Grid h = grid_from_bits(m, n, other);
                if (check_solution(p, h)) expected.push_back(h);
            }
            const auto got = solve_brute_force(p);
            CHECK(got.size() == expected.size());
            for (const Grid& h : expected)
                CHECK(std::find(got.begin(), got.end(), h) != got.end());
        }
    }
}

TEST_CASE("solver respects the limit and the size guard") {
    const Puzzle diagonals =
        Puzzle::create(2, 2, {Clue{{1}}, Clue{{1}}}, {Clue{{1}}, Clue{{1}}});
    CHECK(solve_brute_force(diagonals, 1).size() == 1);

    const Puzzle big = parse_puzzle(read_file(kDataDir + "/demo10.puzzle"));
    CHECK_THROWS_AS(solve_brute_force(big), GuardError);
}

TEST_CASE("puzzle text round-trips") {
    const std::string text = read_file(kDataDir + "/demo10.puzzle");
    const Puzzle p = parse_puzzle(text);
    CHECK(serialize_puzzle(p) == text);
    CHECK(parse_puzzle(serialize_puzzle(p)) == p);

    const Puzzle tiny = parse_puzzle("1 1\n1\n1\n");
    CHECK(tiny.row_clues[0] == Clue{{1}});
}

TEST_CASE("parser rejects each malformation distinctly") {
    auto kind_of = [](const std::string& text) {
        try {
            parse_puzzle(text);
        } catch (const ParseError& e) {
            return e.kind;
        }
        FAIL("expected a parse error");
        return ParseErrorKind::MalformedLine;
    };

    CHECK(kind_of("1 1\nx\n1\n") == ParseErrorKind::MalformedLine);
    CHECK(kind_of("1 1\n1\n") == ParseErrorKind::MalformedLine);          // missing line
    CHECK(kind_of("0 1\n1\n") == ParseErrorKind::BadDimensions);
    CHECK(kind_of("1 5\n6\n1\n1\n1\n1\n1\n") == ParseErrorKind::InfeasibleClue);
    CHECK(kind_of("1 2\n1\n1\n1\n") == ParseErrorKind::BlackCountMismatch);
    CHECK(kind_of("1 1\n-1\n0\n") == ParseErrorKind::MalformedLine);
}

TEST_CASE("grid text round-trips and rejects malformations") {
    const std::string text = read_file(kDataDir + "/demo10.grid");
    CHECK(serialize_grid(parse_grid(text)) == text);
    CHECK_THROWS_AS(parse_grid("#.\n#\n"), ParseError);
    CHECK_THROWS_AS(parse_grid("#x\n..\n"), ParseError);
}

TEST_CASE("clues derived from random grids always validate") {
    SeededRandomSource rng(515);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng.uniform(5));
        const int n = 1 + static_cast<int>(rng.uniform(5));
        Grid g(m, n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c)
                if (rng.uniform(2)) g.set(r, c, Cell::Black);
        const Puzzle p = puzzle_from_grid(g);
        CHECK(check_solution(p, g));
        CHECK(parse_puzzle(serialize_puzzle(p)) == p);
        CHECK(parse_grid(serialize_grid(g)) == g);
    }
}

TEST_CASE("empty clue serializes as a bare zero") {
    Grid g(2, 2);
    g.set(0, 0, Cell::Black);
    g.set(0, 1, Cell::Black);
    const Puzzle p = puzzle_from_grid(g);
    CHECK(serialize_puzzle(p) == "2 2\n2\n0\n1\n1\n");
}
