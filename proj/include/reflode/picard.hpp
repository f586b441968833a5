#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reflode/grid.hpp"
#include "reflode/trigpoly.hpp"

namespace reflode {

// One term c * x(t)^p * x(-t)^q of the nonlinear right-hand side.
struct Monomial {
  double c;
  unsigned p;
  unsigned q;
  bool operator==(const Monomial&) const = default;
};

// f(t, x, y) = forcing(t) + sum of monomials c x^p y^q with p+q >= 1,
// Lipschitz-certified on the ball max(|x|, |y|) <= radius.
struct Nonlinearity {
  TrigPoly forcing;
  std::vector<Monomial> monomials;
  double radius = 1.0;
};

// Certified constant L with |f(t,x1,y1) - f(t,x2,y2)| <= L(|dx| + |dy|) on
// the ball: each monomial contributes |c| max(p,q) R^{p+q-1}, since both
// partial derivatives are bounded by max(p,q) R^{p+q-1} there.
double lipschitz_bound(const Nonlinearity& nl);

// Two independent sufficient conditions for the solution operator composed
// with f to contract.  "apriori" comes from the classical sup-norm estimate
// of the bounded-solution operator; "kernel" from the L1 norm of the two
// exponential kernels, 1/alpha^2 + 1/beta^2.  Either suffices.
struct ContractionCheck {
  bool apriori_ok;           // L < alpha / (4 (1 + alpha))
  bool kernel_ok;            // 2 L (1/alpha^2 + 1/beta^2) < 1
  double apriori_threshold;  // alpha / (4 (1 + alpha))
  double kernel_threshold;   // 1 / (2 (1/alpha^2 + 1/beta^2))
  double apriori_rate;       // 4 L (1/alpha + 1)
  double kernel_rate;        // 2 L (1/alpha^2 + 1/beta^2)
};

ContractionCheck contraction_check(const EquationParams& p, double L);

struct PicardConfig {
  double tol = 1e-9;
  int max_iter = 100;
  double halfwidth = 40.0;
  double step = 0.005;
  double tail_cut = 1e-7;
};

struct PicardReport {
  int iterations = 0;
  double final_increment = 0.0;
  // max over recorded steps of ||x_{n+1} - x_n|| / ||x_n - x_{n-1}||
  double measured_rate = 0.0;
  double governing_rate = 0.0;  // smallest rate among passing conditions
  std::string governing;        // "apriori" or "kernel"
  double lipschitz = 0.0;
  ContractionCheck check{};
  // residual_grid of the fixed point against f(t, x(t), x(-t))
  double residual = 0.0;
  double interior_halfwidth = 0.0;
};

// Fixed-point iteration x_{n+1} = GreenApply(f(., x_n(.), x_n(-.)))
// starting from zero (or from *start, e.g. for uniqueness checks).  Every
// iterate must stay inside the Lipschitz ball.  Errors: NonContractive,
// RadiusExceeded, MaxIterations, VerificationMismatch (converged iterate
// fails its own residual check).
std::pair<GridFunction, PicardReport> picard_solve(
    const EquationParams& p, const Nonlinearity& nl, const PicardConfig& cfg,
    const GridFunction* start = nullptr);

}  // namespace reflode
