#include "zknono/zk.hpp"

#include <functional>

#include "zknono/stats.hpp"

namespace zknono {

namespace {

std::uint64_t fnv1a(std::string_view text, std::uint64_t h) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t poly_hash(std::string_view text) {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (unsigned char c : text) h = h * 0x9e3779b97f4a7c15ull + c + 1;
    return h;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> CanonicalTranscript::hash() const {
    return {fnv1a(text, 14695981039346656037ull), poly_hash(text)};
}

// --- Simulator ----------------------------------------------------------------
//
// Emits the same event stream as an honest run, drawing each observable
// directly from its (solution-independent) distribution: the format word is
// a fair coin, every marker position is uniform over the current length, and
// the final pattern appears at a uniform rotation. Draw order and sizes
// match the real run's shuffles one for one.

namespace {

void simulate_line(const LineContext& ctx, RandomSource& rng, Transcript& tr) {
    const Suit black = ctx.black_suit();
    const Suit white = ctx.white_suit();
    const std::size_t len0 = static_cast<std::size_t>(ctx.length) + 3;

    tr.place(static_cast<std::uint32_t>(ctx.length), false);
    tr.place(2, false);
    tr.place(1, false);

    auto helper_burst = [&](std::size_t len) {
        tr.place(static_cast<std::uint32_t>(len), false);
        tr.shuffle(ShuffleKind::Pile, static_cast<std::uint32_t>(len));
        const std::size_t p = static_cast<std::size_t>(rng.uniform(len));
        for (std::size_t i = 0; i < len; ++i)
            tr.reveal(static_cast<std::uint32_t>(i), i == p ? Suit::Club : Suit::Heart);
        return p;
    };

    // Phase 1: each round exposes one block and its two white neighbours.
    std::size_t len = len0;
    for (int x : ctx.clue.blocks) {
        const std::size_t p = helper_burst(len);
        for (int t = 0; t < x; ++t)
            tr.reveal(static_cast<std::uint32_t>((p + static_cast<std::size_t>(t)) % len), black);
        tr.reveal(static_cast<std::uint32_t>((p + len - 1) % len), white);
        tr.reveal(static_cast<std::uint32_t>((p + static_cast<std::size_t>(x)) % len), white);
        for (int t = 0; t < x; ++t)
            tr.replace(static_cast<std::uint32_t>((p + static_cast<std::size_t>(t)) % len),
                       Suit::Spade);
    }

    // Phase 2: one white reveal and removal per round.
    const int rounds = ctx.length - ctx.clue.sum() - ctx.clue.block_count() + 1;
    for (int round = 0; round < rounds; ++round) {
        const std::size_t p = helper_burst(len);
        tr.reveal(static_cast<std::uint32_t>(p), white);
        tr.remove(static_cast<std::uint32_t>(p));
        --len;
    }

    // Phase 3: the clue-determined pattern at a uniform rotation, then the
    // public rotation that parks the diamond on the right.
    tr.shuffle(ShuffleKind::Cut, static_cast<std::uint32_t>(len));
    std::vector<Suit> word;
    word.push_back(white);
    for (int x : ctx.clue.blocks) {
        for (int t = 0; t < x; ++t) word.push_back(Suit::Spade);
        word.push_back(white);
    }
    word.push_back(Suit::Diamond);
    const std::size_t u = static_cast<std::size_t>(rng.uniform(len));
    for (std::size_t i = 0; i < len; ++i)
        tr.reveal(static_cast<std::uint32_t>(i), word[(i + len - u) % len]);
    tr.rotate(static_cast<std::uint32_t>((len - u) % len));
}

}  // namespace

Transcript simulate_transcript(const Puzzle& puzzle, RandomSource& rng, bool record_events) {
    Transcript tr(record_events);
    const int m = puzzle.rows, n = puzzle.cols;

    for (int i = 0; i < m * n; ++i) tr.place(2, false);

    // Format verification of every cell: a fair coin decides the revealed word.
    for (int i = 0; i < m * n; ++i) {
        tr.place(2, true);
        tr.shuffle(ShuffleKind::Pile, 2);
        const std::uint64_t word = rng.uniform(2);
        tr.reveal(0, word == 0 ? Suit::Club : Suit::Heart);
        tr.reveal(1, word == 0 ? Suit::Heart : Suit::Club);
        tr.rotate(static_cast<std::uint32_t>(word));
    }

    for (int r = 0; r < m; ++r)
        simulate_line({LineRole::Row, n, puzzle.row_clues[static_cast<std::size_t>(r)]}, rng, tr);
    for (int c = 0; c < n; ++c)
        simulate_line({LineRole::Column, m, puzzle.col_clues[static_cast<std::size_t>(c)]}, rng,
                      tr);

    tr.verdict(Verdict::Accept);
    return tr;
}

// --- Exact enumeration ----------------------------------------------------------

namespace {

struct NeedDraw {
    std::uint64_t k;
};

// Hash of the full event stream. Equivalent to hashing the serialized text
// (the event fields determine the line and vice versa) without building it.
std::pair<std::uint64_t, std::uint64_t> hash_events(const Transcript& tr) {
    std::uint64_t h1 = 14695981039346656037ull;
    std::uint64_t h2 = 0x243f6a8885a308d3ull;
    for (const Event& e : tr.events()) {
        const std::uint64_t word =
            (static_cast<std::uint64_t>(e.kind) << 40) ^
            (static_cast<std::uint64_t>(e.suit) << 32) ^
            (static_cast<std::uint64_t>(e.a) << 8) ^ static_cast<std::uint64_t>(e.b);
        h1 = (h1 ^ word) * 1099511628211ull;
        h2 = h2 * 0x9e3779b97f4a7c15ull + word + 1;
    }
    return {h1, h2};
}

// Replays a prefix of (value, size) draws and signals when the run wants one
// more, letting the enumeration driver discover the draw tree lazily.
class EnumeratingSource final : public RandomSource {
public:
    explicit EnumeratingSource(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& script)
        : script_(script) {}

    std::size_t consumed() const { return cursor_; }

protected:
    std::uint64_t draw(std::uint64_t k) override {
        if (cursor_ >= script_.size()) throw NeedDraw{k};
        const auto& [value, size] = script_[cursor_];
        if (size != k) throw MisuseError("draw tree is not deterministic");
        ++cursor_;
        return value;
    }

private:
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& script_;
    std::size_t cursor_ = 0;
};

ExactDistribution enumerate_outcomes(
    const std::function<Transcript(RandomSource&)>& run, std::uint64_t max_outcomes) {
    ExactDistribution dist;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> script;
    std::uint64_t first_product = 0;

    for (;;) {
        EnumeratingSource source(script);
        bool extended = false;
        std::size_t consumed = 0;
        try {
            const Transcript tr = run(source);
            consumed = source.consumed();
            ++dist.counts[hash_events(tr)];
            ++dist.total_leaves;
            if (dist.total_leaves > max_outcomes)
                throw GuardError("outcome space exceeds the exact-mode bound");

            unsigned __int128 product = 1;
            for (std::size_t i = 0; i < consumed; ++i) product *= script[i].second;
            if (product > max_outcomes)
                throw GuardError("outcome space exceeds the exact-mode bound");
            const std::uint64_t p64 = static_cast<std::uint64_t>(product);
            if (first_product == 0)
                first_product = p64;
            else if (first_product != p64)
                dist.uniform_leaves = false;
        } catch (const NeedDraw& need) {
            script.emplace_back(0, need.k);
            extended = true;
        }
        if (extended) continue;

        script.resize(consumed);
        while (!script.empty() && script.back().first + 1 == script.back().second)
            script.pop_back();
        if (script.empty()) break;
        ++script.back().first;
    }
    return dist;
}

}  // namespace

ExactDistribution enumerate_real(const Puzzle& puzzle, const Grid& grid,
                                 const RunConfig& cfg, std::uint64_t max_outcomes) {
    RunConfig run_cfg = cfg;
    run_cfg.record_transcript = true;
    return enumerate_outcomes(
        [&](RandomSource& rng) {
            RunResult r = run_full_protocol(puzzle, grid, rng, run_cfg);
            return std::move(r.transcript);
        },
        max_outcomes);
}

ExactDistribution enumerate_sim(const Puzzle& puzzle, std::uint64_t max_outcomes) {
    return enumerate_outcomes(
        [&](RandomSource& rng) { return simulate_transcript(puzzle, rng, true); },
        max_outcomes);
}

std::uint64_t exact_outcome_count(const Puzzle& puzzle, const Grid& grid, std::uint64_t cap) {
    // One throwaway run counts the draws; the product of their sizes is the
    // outcome-space size (honest runs have a deterministic draw tree).
    class CountingSource final : public RandomSource {
    public:
        unsigned __int128 product = 1;

    protected:
        std::uint64_t draw(std::uint64_t k) override {
            product *= k;
            return 0;
        }
    };
    CountingSource counter;
    RunConfig cfg;
    cfg.record_transcript = false;
    run_full_protocol(puzzle, grid, counter, cfg);
    if (counter.product > cap) return 0;
    return static_cast<std::uint64_t>(counter.product);
}

ExactCompareReport compare_exact(const ExactDistribution& a, const ExactDistribution& b) {
    ExactCompareReport report;
    report.support_a = a.counts.size();
    report.support_b = b.counts.size();

    const bool integer_mode =
        a.uniform_leaves && b.uniform_leaves && a.total_leaves == b.total_leaves;

    auto prob = [](std::uint64_t count, std::uint64_t total) {
        return static_cast<double>(count) / static_cast<double>(total);
    };

    for (const auto& [key, count_a] : a.counts) {
        const auto it = b.counts.find(key);
        if (it == b.counts.end()) {
            ++report.support_mismatches;
            report.max_prob_diff = std::max(report.max_prob_diff, prob(count_a, a.total_leaves));
            continue;
        }
        if (integer_mode) {
            if (count_a != it->second)
                report.max_prob_diff =
                    std::max(report.max_prob_diff,
                             std::abs(prob(count_a, a.total_leaves) -
                                      prob(it->second, b.total_leaves)));
        } else {
            report.max_prob_diff = std::max(
                report.max_prob_diff,
                std::abs(prob(count_a, a.total_leaves) - prob(it->second, b.total_leaves)));
        }
    }
    for (const auto& [key, count_b] : b.counts) {
        if (!a.counts.contains(key)) {
            ++report.support_mismatches;
            report.max_prob_diff = std::max(report.max_prob_diff, prob(count_b, b.total_leaves));
        }
    }

    report.pass = report.support_mismatches == 0 &&
                  (integer_mode ? report.max_prob_diff == 0.0
                                : report.max_prob_diff < 1e-9);
    return report;
}

// --- Binning --------------------------------------------------------------------

namespace {

// Masked skeleton: keeps kinds and the public sizes, hides everything whose
// value is randomness (revealed suits/positions, rotation amounts).
std::uint64_t compute_skeleton_hash(const Transcript& tr) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    };
    for (const Event& e : tr.events()) {
        mix(static_cast<std::uint64_t>(e.kind) + 1);
        switch (e.kind) {
            case EventKind::Place:
            case EventKind::Shuffle:
                mix(e.a);
                mix(e.b);
                break;
            case EventKind::Verdict:
                mix(e.b);
                break;
            default:
                break;
        }
    }
    return h;
}

}  // namespace

void TranscriptBins::add(const Transcript& tr) {
    ++runs;
    const std::uint64_t h = compute_skeleton_hash(tr);
    if (!skeleton_set) {
        skeleton_hash = h;
        skeleton_set = true;
    } else if (h != skeleton_hash) {
        skeleton_consistent = false;
    }

    const std::vector<Event>& ev = tr.events();
    std::size_t i = 0;
    // `size` consecutive reveals covering positions 0..size-1, starting at i?
    auto reveal_burst = [&](std::uint32_t size) {
        if (i + size > ev.size()) return false;
        for (std::uint32_t t = 0; t < size; ++t)
            if (ev[i + t].kind != EventKind::Reveal || ev[i + t].a != t) return false;
        return true;
    };

    while (i < ev.size()) {
        if (ev[i].kind != EventKind::Shuffle) {
            ++i;
            continue;
        }
        const std::uint32_t size = ev[i].a;
        const ShuffleKind kind = static_cast<ShuffleKind>(ev[i].b);
        ++i;

        if (kind == ShuffleKind::Pile && size == 2) {
            // Format check: two reveals then the public swap amount.
            if (reveal_burst(2) && i + 2 < ev.size() && ev[i + 2].kind == EventKind::Rotate &&
                ev[i + 2].a <= 1) {
                ++format_words[ev[i + 2].a];
                i += 3;
            } else {
                ++unexpected_events;
            }
        } else if (kind == ShuffleKind::Pile) {
            // Chosen cut: a full helper burst with exactly one club. Reveals
            // of the payload that follow belong to the calling phase and are
            // left to the outer scan.
            std::size_t clubs = 0, club_pos = 0;
            if (reveal_burst(size)) {
                for (std::uint32_t t = 0; t < size; ++t)
                    if (ev[i + t].suit == Suit::Club) {
                        ++clubs;
                        club_pos = t;
                    }
            }
            if (clubs == 1) {
                auto& counts = marker_pos[size];
                counts.resize(size, 0);
                ++counts[club_pos];
                i += size;
            } else {
                ++unexpected_events;
            }
        } else {
            // Final cut: full reveal then the public rotation amount.
            if (reveal_burst(size) && i + size < ev.size() &&
                ev[i + size].kind == EventKind::Rotate) {
                auto& counts = rotate_amount[size];
                counts.resize(size, 0);
                ++counts[ev[i + size].a % size];
                i += size + 1;
            } else {
                ++unexpected_events;
            }
        }
    }
}

TranscriptBins sample_real_bins(const Puzzle& puzzle, const Grid& grid,
                                std::uint64_t trials, std::uint64_t seed,
                                const RunConfig& cfg) {
    RunConfig run_cfg = cfg;
    run_cfg.record_transcript = true;
    TranscriptBins bins;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededRandomSource rng(seed + t);
        RunResult r = run_full_protocol(puzzle, grid, rng, run_cfg);
        bins.add(r.transcript);
    }
    return bins;
}

TranscriptBins sample_sim_bins(const Puzzle& puzzle, std::uint64_t trials,
                               std::uint64_t seed) {
    TranscriptBins bins;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededRandomSource rng(seed + t);
        bins.add(simulate_transcript(puzzle, rng, true));
    }
    return bins;
}

BinCompareReport compare_binned(const TranscriptBins& a, const TranscriptBins& b,
                                double alpha) {
    BinCompareReport report;
    report.alpha = alpha;
    report.skeleton_match = a.skeleton_consistent && b.skeleton_consistent &&
                            a.skeleton_set && b.skeleton_set &&
                            a.skeleton_hash == b.skeleton_hash &&
                            a.unexpected_events == 0 && b.unexpected_events == 0;
    if (!report.skeleton_match) report.divergent.push_back("skeleton");

    std::vector<std::pair<std::string, ChiSquareResult>> tests;
    tests.emplace_back("format-word",
                       chi_square_homogeneity({a.format_words[0], a.format_words[1]},
                                              {b.format_words[0], b.format_words[1]}));
    for (const auto& [len, counts_a] : a.marker_pos) {
        const auto it = b.marker_pos.find(len);
        if (it == b.marker_pos.end()) {
            report.divergent.push_back("marker-" + std::to_string(len));
            continue;
        }
        tests.emplace_back("marker-" + std::to_string(len),
                           chi_square_homogeneity(counts_a, it->second));
    }
    for (const auto& [len, counts_a] : a.rotate_amount) {
        const auto it = b.rotate_amount.find(len);
        if (it == b.rotate_amount.end()) {
            report.divergent.push_back("rotation-" + std::to_string(len));
            continue;
        }
        tests.emplace_back("rotation-" + std::to_string(len),
                           chi_square_homogeneity(counts_a, it->second));
    }
    for (const auto& [len, counts_b] : b.marker_pos)
        if (!a.marker_pos.contains(len))
            report.divergent.push_back("marker-" + std::to_string(len));
    for (const auto& [len, counts_b] : b.rotate_amount)
        if (!a.rotate_amount.contains(len))
            report.divergent.push_back("rotation-" + std::to_string(len));

    report.tables = static_cast<int>(tests.size());
    const double alpha_each = report.tables > 0 ? alpha / report.tables : alpha;
    for (const auto& [name, result] : tests) {
        report.table_p.emplace_back(name, result.p_value);
        report.min_p = std::min(report.min_p, result.p_value);
        if (result.p_value < alpha_each) report.divergent.push_back(name);
    }

    report.pass = report.skeleton_match && report.divergent.empty();
    return report;
}

// --- Top-level ------------------------------------------------------------------

ZkComparisonReport zk_compare_real_vs_sim(const Puzzle& puzzle, const Grid& grid,
                                          std::uint64_t trials, double alpha,
                                          std::uint64_t seed, std::uint64_t exact_bound,
                                          const RunConfig& real_cfg) {
    ZkComparisonReport report;
    report.trials = trials;
    report.alpha = alpha;
    report.seed = seed;
    report.outcome_space = exact_outcome_count(puzzle, grid, exact_bound);
    report.exact_mode = report.outcome_space != 0;
    if (report.exact_mode) {
        report.exact = compare_exact(enumerate_real(puzzle, grid, real_cfg, exact_bound),
                                     enumerate_sim(puzzle, exact_bound));
        report.pass = report.exact.pass;
    } else {
        report.binned = compare_binned(sample_real_bins(puzzle, grid, trials, seed, real_cfg),
                                       sample_sim_bins(puzzle, trials, seed + trials),
                                       alpha);
        report.pass = report.binned.pass;
    }
    return report;
}

ZkComparisonReport zk_compare_real_vs_real(const Puzzle& puzzle, const Grid& grid_a,
                                           const Grid& grid_b, std::uint64_t trials,
                                           double alpha, std::uint64_t seed,
                                           std::uint64_t exact_bound) {
    ZkComparisonReport report;
    report.trials = trials;
    report.alpha = alpha;
    report.seed = seed;
    report.outcome_space = exact_outcome_count(puzzle, grid_a, exact_bound);
    report.exact_mode = report.outcome_space != 0;
    if (report.exact_mode) {
        report.exact = compare_exact(enumerate_real(puzzle, grid_a, {}, exact_bound),
                                     enumerate_real(puzzle, grid_b, {}, exact_bound));
        report.pass = report.exact.pass;
    } else {
        report.binned = compare_binned(sample_real_bins(puzzle, grid_a, trials, seed, {}),
                                       sample_real_bins(puzzle, grid_b, trials, seed + trials, {}),
                                       alpha);
        report.pass = report.binned.pass;
    }
    return report;
}

}  // namespace zknono
