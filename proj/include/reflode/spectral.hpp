#pragma once

#include <variant>

#include "reflode/trigpoly.hpp"

namespace reflode {

// Coefficients of x''(t) + a x(t) + b x(-t) = g(t).  b != 0 throughout:
// with b = 0 the reflection term disappears and the equation is classical.
struct EquationParams {
  double a;
  double b;
  bool operator==(const EquationParams&) const = default;
};

// a < b < -a: the linearization has real spectrum {+-alpha, +-beta},
// alpha = sqrt(b - a), beta = sqrt(-a - b).  Exponential dichotomy gives a
// unique bounded solution for every bounded forcing.
struct Hyperbolic {
  double alpha;
  double beta;
};

// -a < b < a: purely imaginary spectrum {+-i mu, +-i nu}, mu = sqrt(a - b),
// nu = sqrt(a + b).  Almost periodic solutions exist away from resonance.
struct Oscillatory {
  double mu;
  double nu;
};

// a + b and a - b of opposite signs: one real pair, one imaginary pair.
// No dichotomy argument and no uniform nonresonance; outside scope.
struct Mixed {
  double real_rate;
  double imag_rate;
};

// |a| == |b|: a zero eigenvalue pair, no dichotomy and no uniform
// non-resonance; outside scope.
struct Degenerate {};

using SpectralData = std::variant<Hyperbolic, Oscillatory, Mixed, Degenerate>;

SpectralData classify(const EquationParams& p);

// Response of the equation to a single harmonic at frequency lambda:
//   g = A cos(lambda t) + B sin(lambda t)
//   x = p_coeff * g + q_coeff * g(-t)
// i.e. x keeps the same two-dimensional harmonic subspace.
struct HarmonicResponse {
  double p_coeff;
  double q_coeff;
};

// Throws Resonance when the divisor (a - lambda^2)^2 - b^2 falls below
// resonance_tol in absolute value.
HarmonicResponse harmonic_response(const EquationParams& p, double lambda,
                                   double resonance_tol = 1e-9);

// Unique bounded / almost periodic solution for trigonometric forcing,
// solved per harmonic and per parity channel: even parts divide by
// (a + b) - lambda^2, odd parts by (a - b) - lambda^2.  Only divisors whose
// coefficient is actually nonzero are required to be nonresonant.
TrigPoly bounded_solution(const EquationParams& p, const TrigPoly& g,
                          double resonance_tol = 1e-9);

// Distances from the forcing spectrum to the natural frequencies mu, nu in
// the oscillatory regime.  theorem_* take the minimum over all forcing
// frequencies against both rates; sharp_* only pit odd-part frequencies
// against mu and even-part frequencies against nu (the channels that
// actually couple).  Empty parity parts give +infinity.
struct MarginReport {
  double theorem_margin_mu;
  double theorem_margin_nu;
  double sharp_margin_odd;
  double sharp_margin_even;
};

MarginReport margins(const EquationParams& p, const TrigPoly& g);

// Oscillatory-case initial value problem.  The bounded family is
// particular + A sin(mu t) + B cos(nu t); A and B are pinned by x(0) and
// x'(0).  (sin(mu t) is the odd homogeneous solution: its reflection enters
// with a minus sign, matching the -mu^2 = -(a - b) balance; cos(nu t) is
// the even one.)
struct Case2Solution {
  TrigPoly particular;
  double mu = 0.0;
  double nu = 0.0;
  double a_sin_mu = 0.0;
  double b_cos_nu = 0.0;

  double eval(double t) const;
  double eval_derivative(double t) const;
};

Case2Solution case2_ivp(const EquationParams& p, const TrigPoly& g, double x0,
                        double xdot0, double resonance_tol = 1e-9);

}  // namespace reflode
