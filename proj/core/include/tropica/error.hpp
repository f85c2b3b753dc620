#pragma once

#include <stdexcept>
#include <string>

namespace tropica {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Residuation by the semiring zero, or a scaling that would leave the carrier.
class UndefinedOperation : public Error {
 public:
  using Error::Error;
};

// A circuit of the precedence graph has weight <= 0, so the star diverges.
class NonPositiveCircuit : public Error {
 public:
  NonPositiveCircuit(const std::string& what, double min_weight)
      : Error(what), min_weight_(min_weight) {}
  double min_weight() const { return min_weight_; }

 private:
  double min_weight_;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DensityOutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MissingField : public ParseError {
 public:
  explicit MissingField(std::string field)
      : ParseError("missing field \"" + field + "\""), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class RegimeNotApplicable : public Error {
 public:
  using Error::Error;
};

class RNotApplicable : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class UniquenessViolated : public Error {
 public:
  using Error::Error;
};

class WindowTooLarge : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class WrongSize : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace tropica
