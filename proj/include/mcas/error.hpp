#pragma once

#include <stdexcept>
#include <string>

namespace mcas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The normalizer of a Bayes update was zero: the observation cannot occur
/// under the given belief and action.
class ZeroProbabilityObservation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A table or belief violates a stochasticity or range invariant.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SemanticError : public Error {
 public:
  using Error::Error;
};

/// Pruning removed every member of an estimated belief set.
class EmptyAfterPrune : public Error {
 public:
  using Error::Error;
};

/// The pointwise product of the beliefs being conflated is identically zero.
class DisjointSupports : public Error {
 public:
  using Error::Error;
};

/// Every candidate joint belief was dropped during selection.
class AllCandidatesInvalid : public Error {
 public:
  using Error::Error;
};

class UnsupportedSpec : public Error {
 public:
  using Error::Error;
};

/// The solver could not complete a single backup.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A cached policy was solved for a different model or solver settings.
class StaleCache : public Error {
 public:
  using Error::Error;
};

}  // namespace mcas
