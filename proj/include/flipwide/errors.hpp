#pragma once

#include <stdexcept>
#include <string>

namespace flipwide {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad vertex id, overlapping balls, twins, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration budget was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Stable-mode certificate could not be produced (s_lt != s_gt unavoidable).
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A post-condition the construction guarantees failed to hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace flipwide
