#pragma once

#include <stdexcept>
#include <string>

namespace ctvf {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix handed to factor_spd is not positive definite (even after jitter).
class NotSpdError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Lyapunov system is singular, i.e. the coefficient matrix is not Hurwitz.
class NotHurwitzError : public Error {
 public:
  using Error::Error;
};

/// A simulation step produced NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Gaussian derived kernel requested with a non-diagonal diffusion matrix.
class DiffusionUnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Discrete-time kernel evaluated at a point without a known successor.
class MissingSuccessorError : public Error {
 public:
  using Error::Error;
};

/// QP constraint set is empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Config file could not be parsed; carries the offending line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Config parsed but a field is missing, inconsistent, or out of range.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string field)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace ctvf
