#pragma once

#include <stdexcept>
#include <string>

namespace kfib {

// Base class for all numeric/domain failures raised by this library.
// Contract violations (bad order, index out of range, malformed tags)
// throw std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Backward iteration needs |beta_k| == 1 to stay in exact integers.
class NonUnitTrailingCoefficient : public Error {
 public:
  using Error::Error;
};

// A root series hit its term cap before the tail bound met the target.
class ConvergenceBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A value could not be rounded to an integer with a safe margin.
// Callers should raise the working precision and retry.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// A Binet coefficient denominator vanished; the input was not a root set.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

// A gamma-function ratio was requested at a genuine pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

}  // namespace kfib
