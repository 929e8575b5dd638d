#pragma once

#include <stdexcept>
#include <string>

namespace ivopt {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class DivisionByIntervalContainingZero : public Error {
 public:
  DivisionByIntervalContainingZero()
      : Error("interval division: divisor contains zero") {}
};

class NonFiniteArithmetic : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotAChain : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class BadWeights : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class EndpointOrderViolation : public Error {
 public:
  using Error::Error;
};

class NotComparableAt : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class LeavesDomain : public Error {
 public:
  using Error::Error;
};

class NotOnKinkPlane : public Error {
 public:
  using Error::Error;
};

class NegativeScale : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class InfeasiblePoint : public Error {
 public:
  using Error::Error;
};

}  // namespace ivopt
