// errors.hpp - exception types shared across osclab.
//
// Argument errors use std::invalid_argument directly; the types below cover
// the remaining failure classes that callers (notably the CLI) map to exit
// codes.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osc {

// Malformed configuration: JSON documents, disorder tables, CLI overrides.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure such as eigensolver non-convergence.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed its configured memory/dimension budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fit or selection range does not contain usable data.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File output/input failure; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A worker failed during an ensemble run.
class PartialResultError : public std::runtime_error {
 public:
  PartialResultError(const std::string& what, std::size_t completed)
      : std::runtime_error(what), completed_(completed) {}
  std::size_t completed_samples() const noexcept { return completed_; }

 private:
  std::size_t completed_;
};

}  // namespace osc
