#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nyq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed transfer-function text. `position()` is the byte offset of the
/// offending token in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ZeroNumerator : public Error {
 public:
  ZeroNumerator() : Error("numerator is identically zero") {}
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("denominator is identically zero") {}
};

class ZeroConstantDenominator : public Error {
 public:
  ZeroConstantDenominator()
      : Error("power series division requires a nonzero constant term in the denominator") {}
};

class OddIndexRequired : public Error {
 public:
  explicit OddIndexRequired(long k)
      : Error("odd index k >= 1 required, got " + std::to_string(k)) {}
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// Raised when the imaginary part of the frequency response vanishes for
/// every frequency, so every omega is an axis crossing.
class DegenerateOnAxis : public Error {
 public:
  DegenerateOnAxis() : Error("frequency response is real for every omega") {}
};

}  // namespace nyq
