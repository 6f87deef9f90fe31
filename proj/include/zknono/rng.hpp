#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zknono/errors.hpp"

namespace zknono {

/// Source of the hidden shift values consumed by shuffles.
///
/// Implementations must be fully deterministic functions of their
/// construction arguments so that equal seeds give bit-identical protocol
/// runs on every platform. Callers use uniform(), which pins the k <= 1
/// behaviour for all implementations: a draw over a single value consumes
/// nothing from the underlying stream.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Uniform draw over {0, ..., k-1}.
    std::uint64_t uniform(std::uint64_t k) {
        if (k == 0) throw MisuseError("uniform draw over empty range");
        if (k == 1) return 0;
        return draw(k);
    }

protected:
    virtual std::uint64_t draw(std::uint64_t k) = 0;
};

/// Production source. Uses mt19937_64 (whose output stream is pinned by the
/// standard) with explicit rejection sampling instead of
/// std::uniform_int_distribution, which differs between standard libraries.
class SeededRandomSource final : public RandomSource {
public:
    explicit SeededRandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

protected:
    std::uint64_t draw(std::uint64_t k) override {
        const std::uint64_t threshold = (-k) % k;  // 2^64 mod k
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold) return x % k;
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Thrown by ScriptedRandomSource when its script runs out. Carries the size
/// of the draw that was requested, which lets enumeration drivers discover
/// the draw tree lazily.
struct ScriptExhausted {
    std::uint64_t requested;
};

/// Test-only source: replays a fixed list of shift values. Not for
/// production runs; it exists so tests can force specific shuffle outcomes.
class ScriptedRandomSource final : public RandomSource {
public:
    explicit ScriptedRandomSource(std::vector<std::uint64_t> script)
        : script_(std::move(script)) {}

    std::size_t consumed() const { return next_; }

protected:
    std::uint64_t draw(std::uint64_t k) override {
        if (next_ >= script_.size()) throw ScriptExhausted{k};
        const std::uint64_t v = script_[next_++];
        if (v >= k) throw MisuseError("scripted shift out of range");
        return v;
    }

private:
    std::vector<std::uint64_t> script_;
    std::size_t next_ = 0;
};

/// Test-only source: every draw returns the same shift (modulo the range).
class FixedRandomSource final : public RandomSource {
public:
    explicit FixedRandomSource(std::uint64_t value) : value_(value) {}

protected:
    std::uint64_t draw(std::uint64_t k) override { return value_ % k; }

private:
    std::uint64_t value_;
};

}  // namespace zknono
