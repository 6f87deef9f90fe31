#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zknono/nonogram.hpp"
#include "zknono/protocol.hpp"
#include "zknono/soundness.hpp"
#include "zknono/zk.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw zknono::Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_deck(std::ostream& out, const zknono::DeckCounts& deck) {
    out << "deck";
    for (zknono::Suit s : zknono::kAllSuits)
        out << ' ' << zknono::suit_name(s) << ' ' << deck[s];
    out << '\n';
}

int cmd_solve(const std::string& puzzle_path, std::uint64_t limit) {
    const zknono::Puzzle puzzle = zknono::parse_puzzle(read_file(puzzle_path));
    const std::vector<zknono::Grid> grids = zknono::solve_brute_force(puzzle, limit);
    for (const zknono::Grid& g : grids) std::cout << zknono::serialize_grid(g) << '\n';
    std::cout << "count " << grids.size() << '\n';
    return 0;
}

int cmd_check(const std::string& puzzle_path, const std::string& grid_path) {
    const zknono::Puzzle puzzle = zknono::parse_puzzle(read_file(puzzle_path));
    const zknono::Grid grid = zknono::parse_grid(read_file(grid_path));
    const bool ok = zknono::check_solution(puzzle, grid);
    std::cout << (ok ? "VALID" : "INVALID") << '\n';
    return ok ? 0 : 1;
}

int cmd_prove(const std::string& puzzle_path, const std::string& grid_path,
              std::uint64_t seed, bool trace, bool strict_deck) {
    const zknono::Puzzle puzzle = zknono::parse_puzzle(read_file(puzzle_path));
    const zknono::Grid grid = zknono::parse_grid(read_file(grid_path));
    if (grid.rows() != puzzle.rows || grid.cols() != puzzle.cols)
        throw zknono::MisuseError("grid dimensions do not match the puzzle");

    zknono::RunConfig cfg;
    cfg.deck = strict_deck ? zknono::DeckPolicy::Exact : zknono::DeckPolicy::Auto;
    cfg.record_transcript = trace;

    zknono::SeededRandomSource rng(seed);
    zknono::RunResult result;
    try {
        result = zknono::run_full_protocol(puzzle, grid, rng, cfg);
    } catch (const zknono::SupplyError& e) {
        std::cerr << "deck-underflow: " << e.what() << '\n';
        return 1;
    }

    if (trace) std::cout << result.transcript.to_text();
    std::ostream& out = trace ? std::cerr : std::cout;
    out << "seed " << seed << '\n';
    out << "cards " << zknono::expected_card_count(puzzle.rows, puzzle.cols) << '\n';
    print_deck(out, result.ledger.initial_deck);
    if (result.ledger.extra_clubs != 0)
        out << "extra-clubs " << result.ledger.extra_clubs << '\n';
    out << "shuffles " << result.ledger.shuffles << '\n';
    out << "expected-shuffles " << result.ledger.expected_shuffles << '\n';
    if (result.reject_reason)
        out << "reject-reason " << zknono::reject_reason_name(*result.reject_reason) << '\n';
    out << "verdict "
        << (result.verdict == zknono::Verdict::Accept ? "ACCEPT" : "REJECT") << '\n';
    return result.verdict == zknono::Verdict::Accept ? 0 : 1;
}

int cmd_resources(int m, int n, int w) {
    if (m < 1 || n < 1) throw zknono::Error("dimensions must be positive");
    if (w < 0 || w > m * n) throw zknono::Error("white count must lie in [0, m*n]");
    std::cout << "cards " << zknono::expected_card_count(m, n) << '\n';
    std::cout << "shuffles " << zknono::expected_shuffle_count(m, n, w) << '\n';
    print_deck(std::cout, zknono::protocol_deck(m, n));
    return 0;
}

void print_zk_report(const std::string& name, const zknono::ZkComparisonReport& report) {
    std::cout << "comparison " << name << '\n';
    std::cout << "  mode " << (report.exact_mode ? "exact" : "chi-square") << '\n';
    if (report.exact_mode) {
        std::cout << "  outcomes " << report.outcome_space << '\n';
        std::cout << "  support " << report.exact.support_a << " vs " << report.exact.support_b
                  << ", mismatches " << report.exact.support_mismatches << '\n';
        std::cout << "  max-prob-diff " << report.exact.max_prob_diff << '\n';
    } else {
        std::cout << "  tables " << report.binned.tables << ", min-p " << report.binned.min_p
                  << '\n';
        for (const auto& [table, p] : report.binned.table_p)
            std::cout << "  p " << table << ' ' << p << '\n';
        for (const std::string& d : report.binned.divergent)
            std::cout << "  divergent " << d << '\n';
    }
    std::cout << "  result " << (report.pass ? "pass" : "FAIL") << '\n';
}

int cmd_zk_test(const std::string& puzzle_path, const std::string& grid_path,
                std::uint64_t trials, double alpha, std::uint64_t seed, bool leaky) {
    const zknono::Puzzle puzzle = zknono::parse_puzzle(read_file(puzzle_path));

    std::vector<zknono::Grid> solutions;
    if (!grid_path.empty()) {
        solutions.push_back(zknono::parse_grid(read_file(grid_path)));
    } else {
        solutions = zknono::solve_brute_force(puzzle, 2);
        if (solutions.empty()) throw zknono::Error("puzzle has no solution");
    }

    std::cout << "seed " << seed << '\n';
    std::cout << "trials " << trials << '\n';
    std::cout << "alpha " << alpha << '\n';

    zknono::RunConfig real_cfg;
    real_cfg.leaky_skip_turn_down = leaky;
    if (leaky) std::cout << "variant leaky\n";

    bool all_pass = true;
    const auto real_vs_sim = zknono::zk_compare_real_vs_sim(
        puzzle, solutions[0], trials, alpha, seed, zknono::kDefaultExactBound, real_cfg);
    print_zk_report("real-vs-sim", real_vs_sim);
    all_pass &= real_vs_sim.pass;

    if (solutions.size() > 1) {
        const auto real_vs_real = zknono::zk_compare_real_vs_real(
            puzzle, solutions[0], solutions[1], trials, alpha, seed + 1);
        print_zk_report("real-vs-real", real_vs_real);
        all_pass &= real_vs_real.pass;
    }

    std::cout << (all_pass ? "zk-test pass" : "zk-test FAIL") << '\n';
    return all_pass ? 0 : 1;
}

int cmd_soundness(int max_cells, int depth_bound, bool no_parallel) {
    const zknono::SoundnessReport report =
        zknono::soundness_sweep(max_cells, depth_bound, !no_parallel);
    std::cout << report.to_text();
    std::cout << (report.accepting_found == 0 ? "soundness pass" : "soundness FAIL") << '\n';
    return report.accepting_found == 0 ? 0 : 1;
}

int cmd_gen(int m, int n, std::uint64_t seed, double density, bool show_grid) {
    if (m < 1 || n < 1) throw zknono::Error("dimensions must be positive");
    if (density < 0.0 || density > 1.0) throw zknono::Error("density must lie in [0, 1]");
    zknono::SeededRandomSource rng(seed);
    zknono::Grid g(m, n);
    const std::uint64_t threshold = static_cast<std::uint64_t>(density * 1000000.0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c)
            if (rng.uniform(1000000) < threshold) g.set(r, c, zknono::Cell::Black);
    std::cerr << "seed " << seed << '\n';
    std::cout << zknono::serialize_puzzle(zknono::puzzle_from_grid(g));
    if (show_grid) std::cerr << zknono::serialize_grid(g);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Card-based zero-knowledge proof of Nonogram: simulator and checkers"};
    app.require_subcommand(1);

    std::string puzzle_path, grid_path;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t trials = 10000;
    std::uint64_t limit = UINT64_MAX;
    double alpha = 0.01;
    double density = 0.5;
    int m = 1, n = 1, w = 0;
    int max_cells = 6;
    int depth_bound = zknono::kDefaultDepthBound;
    bool trace = false, strict_deck = false, leaky = false, no_parallel = false,
         show_grid = false;

    CLI::App* solve = app.add_subcommand("solve", "enumerate solutions (brute force oracle)");
    solve->add_option("puzzle", puzzle_path)->required();
    solve->add_option("--limit", limit, "stop after this many solutions");

    CLI::App* check = app.add_subcommand("check", "validate a grid against a puzzle");
    check->add_option("puzzle", puzzle_path)->required();
    check->add_option("grid", grid_path)->required();

    CLI::App* prove = app.add_subcommand("prove", "run the full interactive proof");
    prove->add_option("puzzle", puzzle_path)->required();
    prove->add_option("grid", grid_path)->required();
    prove->add_option("--seed", seed, "shuffle seed (default 42)");
    prove->add_flag("--trace", trace, "stream the transcript to stdout");
    prove->add_flag("--strict-deck", strict_deck,
                    "run with exactly the nominal deck; underflow fails the run");

    CLI::App* resources = app.add_subcommand("resources", "card and shuffle formulas");
    resources->add_option("m", m)->required();
    resources->add_option("n", n)->required();
    resources->add_option("w", w)->required();

    CLI::App* zk = app.add_subcommand("zk-test", "transcript distribution comparisons");
    zk->add_option("puzzle", puzzle_path)->required();
    zk->add_option("--grid", grid_path, "solution to use for real runs (default: solve)");
    zk->add_option("--trials", trials, "samples per side in chi-square mode");
    zk->add_option("--alpha", alpha, "family significance level");
    zk->add_option("--seed", seed, "base seed (default 42)");
    zk->add_flag("--leaky", leaky, "self-check: run the deliberately leaky variant")
        ->group("");  // hidden test hook

    CLI::App* soundness = app.add_subcommand("soundness-search",
                                             "exhaustive cheating-prover search");
    soundness->add_option("--max-cells", max_cells, "grid sizes to cover (max 6)");
    soundness->add_option("--depth-bound", depth_bound);
    soundness->add_flag("--no-parallel", no_parallel);

    CLI::App* gen = app.add_subcommand("gen", "random grid, derived puzzle on stdout");
    gen->add_option("m", m)->required();
    gen->add_option("n", n)->required();
    gen->add_option("--seed", seed, "generator seed (default 42)");
    gen->add_option("--density", density, "black-cell probability (default 0.5)");
    gen->add_flag("--show-grid", show_grid, "print the grid to stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(solve)) return cmd_solve(puzzle_path, limit);
        if (app.got_subcommand(check)) return cmd_check(puzzle_path, grid_path);
        if (app.got_subcommand(prove))
            return cmd_prove(puzzle_path, grid_path, seed, trace, strict_deck);
        if (app.got_subcommand(resources)) return cmd_resources(m, n, w);
        if (app.got_subcommand(zk))
            return cmd_zk_test(puzzle_path, grid_path, trials, alpha, seed, leaky);
        if (app.got_subcommand(soundness))
            return cmd_soundness(max_cells, depth_bound, no_parallel);
        if (app.got_subcommand(gen)) return cmd_gen(m, n, seed, density, show_grid);
    } catch (const zknono::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
