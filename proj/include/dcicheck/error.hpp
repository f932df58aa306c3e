#pragma once

#include <stdexcept>
#include <string>

namespace dcicheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text, out-of-range index, degree mismatch.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A size cap of a search routine was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The requested scan or enumeration scope cannot be completed.
class ScopeInfeasible : public Error {
 public:
  using Error::Error;
};

/// A structural precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A self-check failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcicheck
