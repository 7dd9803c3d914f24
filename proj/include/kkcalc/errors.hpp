#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kkcalc {

/// Base class of all errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: ill-formed homomorphisms, bad coordinates, invalid job files.
struct ValidationError : Error {
    using Error::Error;
};

/// A stated precondition of the requested operation does not hold for the input.
struct HypothesisError : Error {
    using Error::Error;
};

/// Surface-syntax error; `position` is a byte offset into the input text.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
};

}  // namespace kkcalc
