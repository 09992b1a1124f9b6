#pragma once

#include <stdexcept>
#include <string>

namespace quadell {

//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Malformed numeric input: non-finite values, singular maps, empty quadratic part.
class InputError : public Error
{
public:
  using Error::Error;
};

//! A quadrilateral failed validation. `predicate()` names the failed check.
class ValidationError : public Error
{
public:
  ValidationError(std::string predicate, const std::string& message)
    : Error(message)
    , predicate_(std::move(predicate))
  {
  }

  const std::string& predicate() const { return predicate_; }

private:
  std::string predicate_;
};

//! The operation does not support the quadrilateral's shape class.
class UnsupportedShapeError : public Error
{
public:
  using Error::Error;
};

//! No right-angle Steiner frame exists for the quadrilateral.
class FrameUnavailableError : public UnsupportedShapeError
{
public:
  using UnsupportedShapeError::UnsupportedShapeError;
};

//! A pencil or family parameter lies outside its admissible open interval.
class DomainError : public Error
{
public:
  DomainError(const std::string& message, double lo, double hi)
    : Error(message)
    , lo_(lo)
    , hi_(hi)
  {
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

private:
  double lo_;
  double hi_;
};

//! Root isolation or minimization failed to converge.
class NumericError : public Error
{
public:
  using Error::Error;
};

} // namespace quadell
