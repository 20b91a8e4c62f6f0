#pragma once

#include <stdexcept>
#include <string>

namespace rlnc {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Matrix/vector shape mismatches.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Invalid field parameters, elements out of range, inversion of zero.
class FieldError : public Error {
public:
    using Error::Error;
};

// Inversion of a square but rank-deficient matrix. Kept distinct from
// DimensionError so callers can tell "wrong shape" from "singular".
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

// Bad spec strings, incompatible model/orientation combinations.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Text format problems in matrix/pattern files.
class ParseError : public Error {
public:
    using Error::Error;
};

// Enumeration or table request larger than the caller allowed.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

// A decoder refusing an observation. Decoders never guess: any input that
// fails their preconditions ends up here with a structured reason.
class UndecodableError : public Error {
public:
    enum class Reason {
        EmptyObservation,   // no rows, or all rows zero
        NoReferenceBlock,   // no erasure-free nonzero block
        SingularReference,  // reference block not invertible
        Underdetermined,    // erasure budget exceeded, linear system rank-deficient
        Inconsistent,       // observation not explainable by any codeword
        TooManyErasures,    // fewer unerased coordinates than needed
        RankDeficient,      // deletions present where the decoder does not support them
    };

    UndecodableError(Reason reason, const std::string& what)
        : Error(what), reason_(reason) {}

    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

} // namespace rlnc
