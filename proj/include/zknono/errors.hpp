#pragma once

#include <stdexcept>
#include <string>

namespace zknono {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Protocol misuse: an operation was invoked with its preconditions violated
/// (revealing a face-up card, shuffling an empty sequence, ...).
struct MisuseError : Error {
    using Error::Error;
};

/// Drawing a card from an exhausted supply pile.
struct SupplyError : Error {
    using Error::Error;
};

/// Size guards and search depth bounds.
struct GuardError : Error {
    using Error::Error;
};

enum class ParseErrorKind {
    MalformedLine,
    BadDimensions,
    InfeasibleClue,
    BlackCountMismatch,
};

struct ParseError : Error {
    ParseError(ParseErrorKind k, const std::string& msg) : Error(msg), kind(k) {}
    ParseErrorKind kind;
};

}  // namespace zknono
