#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace navfield {

/// No 8-connected route exists between two free cells.
class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number (0 when unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The trend predictor did not deliver in time.
class PredictorUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric has no defined value for the given inputs (e.g. no common agents).
class UndefinedMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace navfield
