#pragma once

#include <stdexcept>
#include <string>

namespace reflode {

// Root of the library's failure taxonomy.  Catch sites (CLI, tests) map each
// subtype to a distinct exit code, so new failure kinds get new subclasses
// rather than new message strings.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Equation coefficients, solver settings, or call arguments out of range.
class InvalidParams : public Error {
public:
  using Error::Error;
};

// Two trigonometric polynomials built over different frequency bases were
// combined.  Coordinates are only comparable within one basis.
class BasisMismatch : public Error {
public:
  using Error::Error;
};

// Antidifferentiation hit a frequency with |value| below the safety margin.
class FrequencyNearZero : public Error {
public:
  FrequencyNearZero(const std::string& msg, double lambda)
      : Error(msg), lambda(lambda) {}
  double lambda;
};

// A forcing frequency fell on (or within tolerance of) a natural frequency
// with a nonzero coefficient attached, so no bounded solution exists.
class Resonance : public Error {
public:
  Resonance(const std::string& msg, double lambda)
      : Error(msg), lambda(lambda) {}
  double lambda;  // offending frequency value
};

// Mixed or degenerate coefficient regime, or an operation asked of the wrong
// regime (e.g. exponential-kernel quadrature outside the hyperbolic case).
class UnsupportedCase : public Error {
public:
  using Error::Error;
};

// Grid halfwidth/step inconsistent, sample counts off, or non-finite samples.
class InvalidGrid : public Error {
public:
  using Error::Error;
};

// Neither contraction criterion certifies the fixed-point iteration.
class NonContractive : public Error {
public:
  using Error::Error;
};

// An iterate left the ball on which the Lipschitz bound was certified.
class RadiusExceeded : public Error {
public:
  using Error::Error;
};

// Iteration budget exhausted before the increment dropped below tolerance.
class MaxIterations : public Error {
public:
  using Error::Error;
};

// Problem-file text could not be tokenized or violated the section grammar.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg), line(line), column(column) {}
  int line;
  int column;
};

// Problem file parsed but describes an inconsistent or incomplete problem.
class SemanticError : public Error {
public:
  using Error::Error;
};

// The linear system assembled for harmonic balance has no unique solution
// and the free direction is actually forced.
class SingularSystem : public Error {
public:
  using Error::Error;
};

// An independent check (oracle comparison, residual, bound) failed beyond
// the pinned threshold.
class VerificationMismatch : public Error {
public:
  using Error::Error;
};

}  // namespace reflode
