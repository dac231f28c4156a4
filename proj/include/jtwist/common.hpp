#pragma once

#include <stdexcept>
#include <string>

namespace jtwist {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two series/elements with different truncation orders were combined.
class OrderMismatch : public Error {
public:
    using Error::Error;
};

// Two elements over different algebras were combined.
class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

// Inversion of an element whose constant term is not invertible.
class NotInvertible : public Error {
public:
    using Error::Error;
};

// A required structural constraint fails (bad structure constants,
// non-normalized extension coefficients, degenerate parameters, ...).
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

// Malformed textual/JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace jtwist
