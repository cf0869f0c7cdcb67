#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gftcheck {

/// Base of every error raised by the library. Callers that only need to
/// report a failure can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroSeries : public Error {
 public:
  DivisionByZeroSeries() : Error("division by the zero series") {}
};

class InvalidLogArgument : public Error {
 public:
  using Error::Error;
};

class InvalidNormalization : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidDelta : public Error {
 public:
  using Error::Error;
};

/// A denominator of an operator fell below the zero threshold. `factor`
/// names the quantity (e.g. "F", "F'", "P") and `modulus` is its size.
class NearZeroDenominator : public Error {
 public:
  NearZeroDenominator(std::string factor, double modulus)
      : Error("near-zero denominator: |" + factor + "| = " + std::to_string(modulus)),
        factor_(std::move(factor)),
        modulus_(modulus) {}

  const std::string& factor() const noexcept { return factor_; }
  double modulus() const noexcept { return modulus_; }

 private:
  std::string factor_;
  double modulus_;
};

class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class UnknownFixture : public Error {
 public:
  explicit UnknownFixture(const std::string& id) : Error("unknown fixture: " + id) {}
};

class NoFeasibleA : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gftcheck
