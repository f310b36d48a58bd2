#pragma once

#include <stdexcept>
#include <string>

namespace prres {

/// Bad user input: malformed files, schema violations, domain errors in
/// arguments. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required tensor rank is absent from a SpectrumTable.
class IncompleteSpectrumError : public InputError {
 public:
  explicit IncompleteSpectrumError(int rank)
      : InputError("incomplete spectrum data: rank " + std::to_string(rank) + " missing"), rank_(rank) {}
  int rank() const { return rank_; }

 private:
  int rank_;
};

/// Internal resource or diagnostic failure (rewrite fuel, sampler
/// diagnostics). Exit code 4.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FuelExhausted : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace prres
