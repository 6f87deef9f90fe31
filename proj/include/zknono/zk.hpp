#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zknono/protocol.hpp"

namespace zknono {

/// Verifier-observable projection of a run: the serialized event stream
/// (kinds, sizes, revealed positions and suits). Our transcripts carry
/// nothing else, so the projection is the serialization itself.
struct CanonicalTranscript {
    std::string text;

    static CanonicalTranscript project(const Transcript& tr) { return {tr.to_text()}; }
    std::pair<std::uint64_t, std::uint64_t> hash() const;
};

/// Sample one transcript from the puzzle alone: format reveals uniform over
/// the two valid words, marker positions uniform over the current length,
/// phase reveal patterns computed from the clue, and the final pattern at a
/// uniform rotation. Mirrors the real protocol's event stream exactly.
Transcript simulate_transcript(const Puzzle& puzzle, RandomSource& rng,
                               bool record_events = true);

// --- Exact transcript distributions ------------------------------------------

struct ExactDistribution {
    // transcript hash -> leaf count
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
    std::uint64_t total_leaves = 0;
    bool uniform_leaves = true;  // every leaf consumed the same draw-size product
};

inline constexpr std::uint64_t kDefaultExactBound = 1ull << 22;

/// Enumerate every shuffle outcome of an honest run and collect the
/// transcript distribution. Throws GuardError when the outcome space
/// exceeds `max_outcomes`.
ExactDistribution enumerate_real(const Puzzle& puzzle, const Grid& grid,
                                 const RunConfig& cfg = {},
                                 std::uint64_t max_outcomes = kDefaultExactBound);

/// Same, for the simulator.
ExactDistribution enumerate_sim(const Puzzle& puzzle,
                                std::uint64_t max_outcomes = kDefaultExactBound);

/// Number of shuffle outcomes of one honest run (the exact-mode cost).
/// Returns 0 when the count exceeds `cap`.
std::uint64_t exact_outcome_count(const Puzzle& puzzle, const Grid& grid,
                                  std::uint64_t cap = kDefaultExactBound);

struct ExactCompareReport {
    bool pass = false;
    std::uint64_t support_a = 0;
    std::uint64_t support_b = 0;
    std::uint64_t support_mismatches = 0;
    double max_prob_diff = 0.0;
};

ExactCompareReport compare_exact(const ExactDistribution& a, const ExactDistribution& b);

// --- Statistical comparison ---------------------------------------------------

/// Event-stream features pooled across sampled runs: the masked skeleton,
/// format-check words, marker positions per sequence length, and final
/// rotation amounts per length. Anything that does not parse as one of the
/// protocol's reveal bursts counts as unexpected.
struct TranscriptBins {
    bool skeleton_set = false;
    bool skeleton_consistent = true;
    std::uint64_t skeleton_hash = 0;
    std::uint64_t runs = 0;
    std::uint64_t unexpected_events = 0;
    std::array<std::uint64_t, 2> format_words{};              // club-heart, heart-club
    std::map<std::uint32_t, std::vector<std::uint64_t>> marker_pos;
    std::map<std::uint32_t, std::vector<std::uint64_t>> rotate_amount;

    void add(const Transcript& tr);
};

TranscriptBins sample_real_bins(const Puzzle& puzzle, const Grid& grid,
                                std::uint64_t trials, std::uint64_t seed,
                                const RunConfig& cfg = {});
TranscriptBins sample_sim_bins(const Puzzle& puzzle, std::uint64_t trials,
                               std::uint64_t seed);

struct BinCompareReport {
    bool pass = false;
    bool skeleton_match = false;
    double alpha = 0.0;
    int tables = 0;
    double min_p = 1.0;
    std::vector<std::pair<std::string, double>> table_p;  // name -> p-value
    std::vector<std::string> divergent;
};

/// Chi-square homogeneity over every bin table, Bonferroni-adjusted to the
/// family level `alpha`. Divergent skeletons or unexpected events fail
/// outright.
BinCompareReport compare_binned(const TranscriptBins& a, const TranscriptBins& b,
                                double alpha);

// --- Top-level comparisons ----------------------------------------------------

struct ZkComparisonReport {
    bool exact_mode = false;
    bool pass = false;
    ExactCompareReport exact;
    BinCompareReport binned;
    std::uint64_t trials = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t outcome_space = 0;  // exact mode only
};

/// Real runs under `grid` against the simulator. Uses exact enumeration when
/// the outcome space fits `exact_bound`, chi-square sampling otherwise.
ZkComparisonReport zk_compare_real_vs_sim(const Puzzle& puzzle, const Grid& grid,
                                          std::uint64_t trials, double alpha,
                                          std::uint64_t seed,
                                          std::uint64_t exact_bound = kDefaultExactBound,
                                          const RunConfig& real_cfg = {});

/// Real runs under two different solutions of the same puzzle.
ZkComparisonReport zk_compare_real_vs_real(const Puzzle& puzzle, const Grid& grid_a,
                                           const Grid& grid_b, std::uint64_t trials,
                                           double alpha, std::uint64_t seed,
                                           std::uint64_t exact_bound = kDefaultExactBound);

}  // namespace zknono
