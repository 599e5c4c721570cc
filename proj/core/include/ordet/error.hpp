#pragma once

#include <stdexcept>
#include <string>

namespace ordet {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor or operation received a parameter outside its domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Inputs are individually valid but mutually inconsistent (length mismatch,
/// non-normalizable pmf, wrong size-model variant).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The requested computation needs a purely continuous law; censored laws
/// carry an atom and are only supported by Monte Carlo.
class UnsupportedLaw : public Error {
 public:
  using Error::Error;
};

/// Root finding was given an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric routine did not reach its tolerance. Carries the best
/// estimate obtained before giving up.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace ordet
