#pragma once

#include <stdexcept>
#include <string>

namespace ufg {

/// Base of every error raised by the library (precondition and contract violations).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive computation would exceed its configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed text or binary input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ufg
