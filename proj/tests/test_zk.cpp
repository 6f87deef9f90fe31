#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zknono/stats.hpp"
#include "zknono/zk.hpp"

using namespace zknono;

namespace {

Puzzle one_cell_black() { return Puzzle::create(1, 1, {Clue{{1}}}, {Clue{{1}}}); }

Grid grid_from_bits(int m, int n, std::uint32_t bits) {
    Grid g(m, n);
    for (int i = 0; i < m * n; ++i)
        if ((bits >> i) & 1u) g.set(i / n, i % n, Cell::Black);
    return g;
}

}  // namespace

TEST_CASE("chi-square plumbing behaves at known points") {
    // 0.99 quantile of chi-square with 4 degrees of freedom.
    CHECK(gammq(2.0, 13.2767 / 2) == doctest::Approx(0.01).epsilon(0.01));
    CHECK(gammq(0.5, 0.0) == 1.0);

    CHECK(chi_square_uniform({1000, 1000, 1000}).p_value > 0.5);
    CHECK(chi_square_uniform({1500, 1000, 500}).p_value < 0.01);

    CHECK(chi_square_homogeneity({500, 500}, {510, 490}).p_value > 0.1);
    CHECK(chi_square_homogeneity({900, 100}, {100, 900}).p_value < 1e-6);
}

TEST_CASE("canonical transcripts hash by content") {
    Transcript a, b;
    a.reveal(1, Suit::Club);
    b.reveal(1, Suit::Club);
    CHECK(CanonicalTranscript::project(a).hash() == CanonicalTranscript::project(b).hash());
    b.reveal(2, Suit::Heart);
    CHECK(CanonicalTranscript::project(a).hash() != CanonicalTranscript::project(b).hash());
}

TEST_CASE("simulated and real event skeletons coincide") {
    for (const auto& [m, n, bits] : {std::tuple{1, 1, 1u}, std::tuple{2, 2, 0b1001u},
                                     std::tuple{2, 3, 0b110100u}}) {
        const Grid g = grid_from_bits(m, n, bits);
        const Puzzle p = puzzle_from_grid(g);

        TranscriptBins bins;
        SeededRandomSource real_rng(4);
        bins.add(run_full_protocol(p, g, real_rng, {}).transcript);
        const std::uint64_t real_skeleton = bins.skeleton_hash;

        TranscriptBins sim_bins;
        SeededRandomSource sim_rng(9);
        sim_bins.add(simulate_transcript(p, sim_rng));
        CHECK(sim_bins.skeleton_hash == real_skeleton);
        CHECK(bins.skeleton_consistent);
        CHECK(bins.unexpected_events == 0);
        CHECK(sim_bins.unexpected_events == 0);
    }
}

TEST_CASE("simulated phase-1 rounds reveal block length plus two") {
    // Single row with clue (2,2,1); the simulated helper bursts are followed
    // by x_i black-role reveals and the two white-role caps.
    const Grid g = grid_from_bits(1, 10, 0b1001100011u);  // BBWWWBBWWB left to right
    const Puzzle p = puzzle_from_grid(g);
    REQUIRE(p.row_clues[0] == Clue{{2, 2, 1}});

    SeededRandomSource rng(77);
    const Transcript tr = simulate_transcript(p, rng);
    const auto& ev = tr.events();

    std::vector<int> block_reveals;
    std::size_t i = 0;
    while (i < ev.size()) {
        if (ev[i].kind == EventKind::Shuffle && ev[i].a == 13 &&
            static_cast<ShuffleKind>(ev[i].b) == ShuffleKind::Pile) {
            i += 1 + 13;  // shuffle and the helper burst
            int reveals = 0;
            while (i < ev.size() && ev[i].kind == EventKind::Reveal) {
                ++reveals;
                ++i;
            }
            if (reveals > 1) block_reveals.push_back(reveals - 2);  // minus the two caps
        } else {
            ++i;
        }
    }
    // Phase 1 of the row: rounds for blocks 2, 2, 1. Phase 2 bursts reveal a
    // single card each and were filtered out by the reveals > 1 test.
    REQUIRE(block_reveals.size() >= 3);
    CHECK(block_reveals[0] == 2);
    CHECK(block_reveals[1] == 2);
    CHECK(block_reveals[2] == 1);
}

TEST_CASE("exact distribution equality on the one-cell instances") {
    for (std::uint32_t bits = 0; bits <= 1; ++bits) {
        const Grid g = grid_from_bits(1, 1, bits);
        const Puzzle p = puzzle_from_grid(g);
        const std::uint64_t outcomes = exact_outcome_count(p, g);
        CHECK(outcomes > 0);
        const ExactDistribution real = enumerate_real(p, g);
        const ExactDistribution sim = enumerate_sim(p);
        CHECK(real.total_leaves == outcomes);
        const ExactCompareReport report = compare_exact(real, sim);
        CHECK(report.pass);
        CHECK(report.support_mismatches == 0);
    }
}

TEST_CASE("exact comparator notices a different instance") {
    const Puzzle black = one_cell_black();
    const Grid g_black(1, 1, Cell::Black);
    const Puzzle white = puzzle_from_grid(Grid(1, 1, Cell::White));
    const Grid g_white(1, 1, Cell::White);
    // Different round counts give visibly different transcripts.
    const auto report =
        compare_exact(enumerate_real(black, g_black), enumerate_real(white, g_white));
    CHECK(!report.pass);
    CHECK(report.support_mismatches > 0);
}

TEST_CASE("two solutions of one puzzle are statistically indistinguishable") {
    const Puzzle p = Puzzle::create(2, 2, {Clue{{1}}, Clue{{1}}}, {Clue{{1}}, Clue{{1}}});
    const std::vector<Grid> solutions = solve_brute_force(p);
    REQUIRE(solutions.size() == 2);
    const auto report =
        zk_compare_real_vs_real(p, solutions[0], solutions[1], 4000, 0.01, 2024);
    CHECK(!report.exact_mode);
    CHECK(report.pass);
}

TEST_CASE("real runs match the simulator on a 2x3 instance") {
    const Grid g = grid_from_bits(2, 3, 0b110100u);
    const Puzzle p = puzzle_from_grid(g);
    const auto report = zk_compare_real_vs_sim(p, g, 4000, 0.01, 11);
    CHECK(report.pass);
}

TEST_CASE("the leaky variant is caught in exact mode") {
    const Puzzle p = one_cell_black();
    const Grid g(1, 1, Cell::Black);
    RunConfig leaky;
    leaky.leaky_skip_turn_down = true;
    const auto report = zk_compare_real_vs_sim(p, g, 1000, 0.01, 5,
                                               kDefaultExactBound, leaky);
    CHECK(report.exact_mode);
    CHECK(!report.pass);
    CHECK(report.exact.support_mismatches > 0);
}

TEST_CASE("the leaky variant is caught by the chi-square comparator") {
    const Puzzle p = Puzzle::create(2, 2, {Clue{{1}}, Clue{{1}}}, {Clue{{1}}, Clue{{1}}});
    const Grid g = grid_from_bits(2, 2, 0b1001);
    RunConfig leaky;
    leaky.leaky_skip_turn_down = true;
    const auto report =
        zk_compare_real_vs_sim(p, g, 2000, 0.01, 6, /*exact_bound=*/1, leaky);
    CHECK(!report.exact_mode);
    CHECK(!report.pass);
    CHECK(!report.binned.divergent.empty());
}

TEST_CASE("marker positions pool to a uniform distribution") {
    // A 1x3 all-white instance: the row's removals cut at lengths 6,5,4,3
    // and each column cuts at 4,3, so length 4 pools four cuts per run.
    const Grid g(1, 3);
    const Puzzle p = puzzle_from_grid(g);
    const TranscriptBins bins = sample_sim_bins(p, 7500, 99);
    REQUIRE(bins.marker_pos.count(4) == 1);
    std::uint64_t total = 0;
    for (std::uint64_t c : bins.marker_pos.at(4)) total += c;
    CHECK(total == 30000);
    CHECK(chi_square_uniform(bins.marker_pos.at(4)).p_value >= 0.01);
    CHECK(chi_square_uniform(bins.marker_pos.at(6)).p_value >= 0.01);

    const TranscriptBins real_bins = sample_real_bins(p, g, 7500, 100);
    CHECK(chi_square_uniform(real_bins.marker_pos.at(4)).p_value >= 0.01);
    CHECK(chi_square_uniform(real_bins.marker_pos.at(6)).p_value >= 0.01);
}

TEST_CASE("format words pool to a fair coin") {
    const Grid g = grid_from_bits(2, 2, 0b1001);
    const Puzzle p = puzzle_from_grid(g);
    const TranscriptBins bins = sample_real_bins(p, g, 7500, 123);
    CHECK(bins.format_words[0] + bins.format_words[1] == 4 * 7500);
    CHECK(chi_square_uniform({bins.format_words[0], bins.format_words[1]}).p_value >= 0.01);
}
