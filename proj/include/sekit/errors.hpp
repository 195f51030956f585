#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sekit {

/// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or vertex-set labels that do not line up for an operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Operation requires a square matrix over a single vertex set.
class NotSquare : public Error {
 public:
  using Error::Error;
};

/// A witness slot that must hold a permutation matrix does not.
class NotPermutation : public Error {
 public:
  using Error::Error;
};

/// K-theory of the Cuntz-Krieger algebra is only computed for matrices
/// with no zero row and no zero column.
class NotRegular : public Error {
 public:
  using Error::Error;
};

/// A converter or composer was handed a witness that does not verify.
class InvalidWitness : public Error {
 public:
  using Error::Error;
};

/// The requested enumeration exceeds the configured candidate budget.
class BoundsTooLarge : public Error {
 public:
  using Error::Error;
};

/// A matrix entry is negative where only non-negative values are allowed.
class NegativeEntry : public Error {
 public:
  using Error::Error;
};

/// Declared dimensions disagree with the supplied data.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Certificate carries a schema version this build does not understand.
class SchemaVersionUnsupported : public Error {
 public:
  using Error::Error;
};

/// Certificate payload shape does not match its declared kind.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// Text input that does not conform to the matrix or certificate grammar.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ":" + std::to_string(column) +
              ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sekit
