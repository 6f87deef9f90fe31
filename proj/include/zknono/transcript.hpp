#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "zknono/cards.hpp"

namespace zknono {

enum class EventKind : std::uint8_t {
    Place,
    Shuffle,
    Reveal,
    Replace,
    Remove,
    Rotate,
    Verdict,
};

enum class ShuffleKind : std::uint8_t { Pile, Cut };

enum class Verdict : std::uint8_t { Accept, Reject };

/// One verifier-observable event. Shuffle events carry only the kind and the
/// size of what was shuffled; there is no field that could hold the hidden
/// shift value.
struct Event {
    EventKind kind;
    std::uint32_t a = 0;  // Place: count; Shuffle: size; Reveal/Replace/Remove: position; Rotate: amount
    std::uint32_t b = 0;  // Place: face_up; Shuffle: ShuffleKind; Verdict: verdict
    Suit suit = Suit::Club;  // Reveal/Replace only

    bool operator==(const Event&) const = default;
};

std::string event_to_line(const Event& e);

/// The ordered event stream of one protocol run. Event storage can be
/// switched off for verdict-only Monte Carlo runs; counting stays on either
/// way so ledgers and failure indices remain exact.
class Transcript {
public:
    explicit Transcript(bool store_events = true) : store_(store_events) {}

    void place(std::uint32_t count, bool face_up) {
        push({EventKind::Place, count, face_up ? 1u : 0u, Suit::Club});
    }
    void shuffle(ShuffleKind kind, std::uint32_t size) {
        ++shuffle_count_;
        push({EventKind::Shuffle, size, static_cast<std::uint32_t>(kind), Suit::Club});
    }
    void reveal(std::uint32_t pos, Suit s) { push({EventKind::Reveal, pos, 0, s}); }
    void replace(std::uint32_t pos, Suit s) { push({EventKind::Replace, pos, 0, s}); }
    void remove(std::uint32_t pos) { push({EventKind::Remove, pos, 0, Suit::Club}); }
    void rotate(std::uint32_t amount) { push({EventKind::Rotate, amount, 0, Suit::Club}); }
    void verdict(Verdict v) {
        push({EventKind::Verdict, 0, static_cast<std::uint32_t>(v), Suit::Club});
    }

    const std::vector<Event>& events() const { return events_; }
    std::uint64_t total_emitted() const { return emitted_; }
    std::uint64_t shuffle_count() const { return shuffle_count_; }
    bool stores_events() const { return store_; }

    std::string to_text() const;

private:
    void push(const Event& e) {
        ++emitted_;
        if (store_) events_.push_back(e);
    }

    bool store_;
    std::vector<Event> events_;
    std::uint64_t emitted_ = 0;
    std::uint64_t shuffle_count_ = 0;
};

}  // namespace zknono
