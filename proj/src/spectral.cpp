#include "reflode/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "reflode/errors.hpp"

namespace reflode {

namespace {

void validate(const EquationParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b))
    throw InvalidParams("equation coefficients must be finite");
  if (p.b == 0.0)
    throw InvalidParams("reflection coefficient b must be nonzero");
}

Oscillatory require_oscillatory(const SpectralData& s, const char* who) {
  if (const auto* osc = std::get_if<Oscillatory>(&s)) return *osc;
  throw UnsupportedCase(std::string(who) +
                        ": requires the oscillatory regime (-a < b < a)");
}

}  // namespace

SpectralData classify(const EquationParams& p) {
  validate(p);
  const double apb = p.a + p.b;  // even-channel stiffness
  const double amb = p.a - p.b;  // odd-channel stiffness
  if (apb == 0.0 || amb == 0.0) return Degenerate{};
  if (apb < 0.0 && amb < 0.0)
    return Hyperbolic{std::sqrt(-amb), std::sqrt(-apb)};
  if (apb > 0.0 && amb > 0.0)
    return Oscillatory{std::sqrt(amb), std::sqrt(apb)};
  const double pos = apb > 0.0 ? apb : amb;
  const double neg = apb < 0.0 ? apb : amb;
  return Mixed{std::sqrt(-neg), std::sqrt(pos)};
}

HarmonicResponse harmonic_response(const EquationParams& p, double lambda,
                                   double resonance_tol) {
  validate(p);
  if (!std::isfinite(lambda))
    throw InvalidParams("harmonic_response: lambda must be finite");
  if (!(resonance_tol > 0.0))
    throw InvalidParams("harmonic_response: resonance_tol must be positive");
  const double s = p.a - lambda * lambda;
  const double div = s * s - p.b * p.b;
  if (std::abs(div) < resonance_tol)
    throw Resonance("harmonic_response: (a - lambda^2)^2 - b^2 vanishes",
                    lambda);
  return {s / div, -p.b / div};
}

TrigPoly bounded_solution(const EquationParams& p, const TrigPoly& g,
                          double resonance_tol) {
  validate(p);
  if (!(resonance_tol > 0.0))
    throw InvalidParams("bounded_solution: resonance_tol must be positive");
  TrigPoly x(g.basis());
  for (const auto& [f, c] : g.terms()) {
    const double lam = f.value(g.basis());
    const double lam2 = lam * lam;
    // Parity channels decouple: cos terms are even, sin terms odd.  A zero
    // coefficient never forces a divisor, which is what lets e.g. even
    // forcing pass through an odd-channel resonance untouched.
    if (c.cos_c != 0.0) {
      const double de = (p.a + p.b) - lam2;
      if (std::abs(de) < resonance_tol)
        throw Resonance("bounded_solution: even-channel resonance", lam);
      x.add_term(f.coords(), c.cos_c / de, 0.0);
    }
    if (c.sin_c != 0.0) {
      const double dodd = (p.a - p.b) - lam2;
      if (std::abs(dodd) < resonance_tol)
        throw Resonance("bounded_solution: odd-channel resonance", lam);
      x.add_term(f.coords(), 0.0, c.sin_c / dodd);
    }
  }
  return x;
}

MarginReport margins(const EquationParams& p, const TrigPoly& g) {
  const Oscillatory osc = require_oscillatory(classify(p), "margins");
  constexpr double inf = std::numeric_limits<double>::infinity();
  MarginReport r{inf, inf, inf, inf};
  for (const auto& [f, c] : g.terms()) {
    const double lam = std::abs(f.value(g.basis()));
    r.theorem_margin_mu = std::min(r.theorem_margin_mu, std::abs(lam - osc.mu));
    r.theorem_margin_nu = std::min(r.theorem_margin_nu, std::abs(lam - osc.nu));
    if (c.sin_c != 0.0)
      r.sharp_margin_odd = std::min(r.sharp_margin_odd, std::abs(lam - osc.mu));
    if (c.cos_c != 0.0)
      r.sharp_margin_even =
          std::min(r.sharp_margin_even, std::abs(lam - osc.nu));
  }
  return r;
}

double Case2Solution::eval(double t) const {
  return particular.eval(t) + a_sin_mu * std::sin(mu * t) +
         b_cos_nu * std::cos(nu * t);
}

double Case2Solution::eval_derivative(double t) const {
  return particular.eval_derivative(t) + a_sin_mu * mu * std::cos(mu * t) -
         b_cos_nu * nu * std::sin(nu * t);
}

Case2Solution case2_ivp(const EquationParams& p, const TrigPoly& g, double x0,
                        double xdot0, double resonance_tol) {
  const Oscillatory osc = require_oscillatory(classify(p), "case2_ivp");
  if (!std::isfinite(x0) || !std::isfinite(xdot0))
    throw InvalidParams("case2_ivp: initial values must be finite");
  Case2Solution sol{bounded_solution(p, g, resonance_tol), osc.mu, osc.nu};
  // sin(mu t) solves the homogeneous equation in the odd channel
  // (-mu^2 + a - b = 0), cos(nu t) in the even one (-nu^2 + a + b = 0);
  // they carry x'(0) and x(0) respectively.
  sol.a_sin_mu = (xdot0 - sol.particular.eval_derivative(0.0)) / osc.mu;
  sol.b_cos_nu = x0 - sol.particular.eval(0.0);
  return sol;
}

}  // namespace reflode
