#pragma once

#include <stdexcept>
#include <string>

namespace fpois {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different charts.
class ChartMismatch : public Error {
public:
  explicit ChartMismatch(const std::string& what) : Error("chart mismatch: " + what) {}
};

/// Formal series of different truncation orders were combined.
class OrderMismatch : public Error {
public:
  explicit OrderMismatch(const std::string& what) : Error("truncation order mismatch: " + what) {}
};

/// An operation was called outside its documented domain
/// (nonzero order-0 part, degree out of range, non-closed B-field, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A consistency check that holds whenever the implementation is correct
/// failed (cocycle condition, residual after correction, ...).
class InternalAssertion : public Error {
public:
  explicit InternalAssertion(const std::string& what) : Error("internal assertion: " + what) {}
};

/// Malformed textual input.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace fpois
