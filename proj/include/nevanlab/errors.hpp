#pragma once

#include <stdexcept>
#include <string>

namespace nevanlab {

// Base class for failures that callers are expected to tell apart from
// ordinary argument errors (which use std::invalid_argument).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Re q_j(z) exceeded the direct-evaluation limit; use log-scale evaluation.
class EvaluationOverflow : public Error {
 public:
  using Error::Error;
};

// Trapezoid node doubling hit its node cap without meeting the tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Winding numbers stayed inconsistent after every contour perturbation and
// split retry.
class ZeroFindingError : public Error {
 public:
  using Error::Error;
};

// A cluster of zeros whose multiplicity exceeds the derivative probe cap.
class MultiplicityCapExceeded : public Error {
 public:
  using Error::Error;
};

// An elimination would exceed the supported degree bound.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

// The composition P o f vanishes identically (f(C) lies inside the divisor).
class ImageInDivisor : public Error {
 public:
  using Error::Error;
};

}  // namespace nevanlab
