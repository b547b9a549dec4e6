#ifndef IDEXP_ERRORS_HPP
#define IDEXP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace idexp {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Field descriptor mismatch, division by zero, pthRoot in characteristic 0, ...
struct FieldError : Error {
    using Error::Error;
};

// Unknown variable, bad split, ring mismatch.
struct RingError : Error {
    using Error::Error;
};

// Violated precondition of a pair/blowup operation (center not permissible,
// non-coordinate center, boundary failure, ...).
struct PairError : Error {
    using Error::Error;
};

// A rewrite move was refused; carries the name of the failed side condition.
struct MoveError : Error {
    using Error::Error;
};

// Internal consistency guard failed (generation certificate, residual order
// check, ...). Indicates a bug, not bad input.
struct VerificationError : Error {
    using Error::Error;
};

// Positioned syntax error from the script parser.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& what, int line_, int col_)
        : Error(what + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

}  // namespace idexp

#endif
