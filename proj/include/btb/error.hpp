#pragma once

#include <stdexcept>
#include <string>

namespace btb {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input shapes (matrix sizes, constraint lengths, ranks).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Precondition of an operation's domain not met (e.g. G_n outside B(W)_sigma).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Enumeration caps, vertex budgets and solution-space limits.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Bad user configuration; carries the offending flag in the message.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An internal self-check (re-multiplication, d^2 = 0, ...) failed.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace btb
