#pragma once

#include <string>

#include "reflode/grid.hpp"
#include "reflode/spectral.hpp"
#include "reflode/trigpoly.hpp"

namespace reflode {

// Coefficient l1 norm of x'' + a x + b x(-t) - g; zero iff x solves the
// equation exactly in trig-polynomial arithmetic.
double residual_spectral(const EquationParams& p, const TrigPoly& x,
                         const TrigPoly& g);

// Independent solver: expand x over the frequencies of g, apply the
// operator symbolically to each basis function, and solve the resulting
// dense linear system by elimination with partial pivoting.  A negligible
// pivot means the operator kills that component: the matching right-hand
// side must vanish too (free component, set to zero), otherwise the
// forcing is resonant and SingularSystem is thrown.
TrigPoly harmonic_balance_oracle(const EquationParams& p, const TrigPoly& g,
                                 double resonance_tol = 1e-9);

// State of the first-order system for (x(t), x(-t), x'(t), x'(-t)).
struct SystemState {
  double x;
  double x_reflected;
  double xdot;
  double xdot_reflected;
};

struct IvpResult {
  // Each sweep from t = 0 covers all of [-T, T]: the reflected components
  // fill the half the sweep does not visit directly.
  GridFunction forward;
  GridFunction backward;
  GridFunction xdot;  // from the forward sweep
  // max over nodes of |forward - backward|; checks the reduction's
  // constraint that x_reflected(t) really is x(-t).
  double reflection_mismatch;
};

// Classical RK4 on the coupled system
//   x1' = x3, x2' = -x4, x3' = -a x1 - b x2 + g(t), x4' = b x1 + a x2 - g(-t)
// with x1 = x(t), x2 = x(-t), starting from x(0) = x0, x'(0) = xdot0.
IvpResult integrate_system(const EquationParams& p, const TrigPoly& g,
                           double x0, double xdot0, double halfwidth,
                           double step);

// sup-norm comparison of a claimed solution against the two hyperbolic
// stability constants.  ratio over-estimates sup|x|/sup|g| (upper bound of
// x over lower bound of g); each holds flag is cleared only when even the
// under-estimate lower(x)/upper(g) exceeds the constant, so a reported
// violation is genuine.  A zero solution gives ratio 0.
struct BoundReport {
  double ratio;
  double kernel_constant;   // 1/alpha^2 + 1/beta^2
  double apriori_constant;  // 2/alpha + 1
  bool kernel_holds;
  bool apriori_holds;
};

BoundReport bound_report(const EquationParams& p, const TrigPoly& g,
                         const TrigPoly& x);

// One line of the findings log.
struct Finding {
  double a;
  double b;
  std::string forcing;  // digest from forcing_digest
  std::string constant_name;
  double constant_value;
  double ratio;
  bool holds;
};

// Semicolon-joined "cosAmp,sinAmp@coord,coord" terms; "0" when empty.
std::string forcing_digest(const TrigPoly& g);

// "a=... b=... forcing=... constant=name:value ratio=... verdict=..."
std::string format_finding(const Finding& f);

}  // namespace reflode
