#pragma once

#include <stdexcept>
#include <string>

namespace clifq {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (zero argument, non-prime
/// modulus, degenerate form, mismatched fields, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured search or factorization bound was exhausted.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// The input lies outside the supported desk-scale scope.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// A computed certificate failed its own postcondition.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input; the message carries the location.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Bad command-line or API usage (unknown suite, missing option).
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace clifq
