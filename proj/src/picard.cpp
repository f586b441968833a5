#include "reflode/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "reflode/errors.hpp"
#include "reflode/spectral.hpp"

namespace reflode {

namespace {

// Small integer powers; deterministic left-to-right product.
double ipow(double v, unsigned e) {
  double r = 1.0;
  while (e-- > 0) r *= v;
  return r;
}

void validate(const Nonlinearity& nl) {
  if (!std::isfinite(nl.radius) || nl.radius <= 0.0)
    throw InvalidParams("nonlinearity radius must be finite and positive");
  for (const Monomial& m : nl.monomials) {
    if (!std::isfinite(m.c))
      throw InvalidParams("monomial coefficient must be finite");
    if (m.p + m.q == 0)
      throw InvalidParams(
          "monomial must depend on x or x(-t); fold constants into the "
          "forcing term");
  }
}

Hyperbolic require_hyperbolic(const EquationParams& p) {
  const SpectralData data = classify(p);
  if (const auto* hyp = std::get_if<Hyperbolic>(&data)) return *hyp;
  throw UnsupportedCase(
      "contraction estimates need the exponential-dichotomy regime "
      "(a < b < -a)");
}

}  // namespace

double lipschitz_bound(const Nonlinearity& nl) {
  validate(nl);
  double total = 0.0;
  for (const Monomial& m : nl.monomials) {
    const double deg = double(std::max(m.p, m.q));
    total += std::abs(m.c) * deg * ipow(nl.radius, m.p + m.q - 1);
  }
  return total;
}

ContractionCheck contraction_check(const EquationParams& p, double L) {
  const Hyperbolic hyp = require_hyperbolic(p);
  if (!std::isfinite(L) || L < 0.0)
    throw InvalidParams("Lipschitz constant must be finite and nonnegative");
  const double kernel_norm =
      1.0 / (hyp.alpha * hyp.alpha) + 1.0 / (hyp.beta * hyp.beta);
  ContractionCheck chk{};
  chk.apriori_threshold = hyp.alpha / (4.0 * (1.0 + hyp.alpha));
  chk.kernel_threshold = 1.0 / (2.0 * kernel_norm);
  chk.apriori_rate = 4.0 * L * (1.0 / hyp.alpha + 1.0);
  chk.kernel_rate = 2.0 * L * kernel_norm;
  chk.apriori_ok = L < chk.apriori_threshold;
  chk.kernel_ok = L < chk.kernel_threshold;
  return chk;
}

std::pair<GridFunction, PicardReport> picard_solve(const EquationParams& p,
                                                   const Nonlinearity& nl,
                                                   const PicardConfig& cfg,
                                                   const GridFunction* start) {
  validate(nl);
  if (!std::isfinite(cfg.tol) || cfg.tol <= 0.0)
    throw InvalidParams("tolerance must be finite and positive");
  if (cfg.max_iter < 1) throw InvalidParams("max_iter must be at least 1");

  const KernelSpec kernel = kernel_for(p, cfg.tail_cut);
  const double L = lipschitz_bound(nl);
  const ContractionCheck chk = contraction_check(p, L);
  if (!chk.apriori_ok && !chk.kernel_ok) {
    std::ostringstream msg;
    msg << "Lipschitz constant " << L << " fails both contraction conditions"
        << " (apriori threshold " << chk.apriori_threshold
        << ", kernel threshold " << chk.kernel_threshold << ")";
    throw NonContractive(msg.str());
  }

  PicardReport report{};
  report.lipschitz = L;
  report.check = chk;
  if (chk.kernel_ok && (!chk.apriori_ok || chk.kernel_rate <= chk.apriori_rate)) {
    report.governing_rate = chk.kernel_rate;
    report.governing = "kernel";
  } else {
    report.governing_rate = chk.apriori_rate;
    report.governing = "apriori";
  }

  const GridFunction forcing = sample(nl.forcing, cfg.halfwidth, cfg.step);
  GridFunction x = GridFunction::zeros(cfg.halfwidth, cfg.step);
  if (start != nullptr) {
    if (!start->same_grid(x))
      throw InvalidGrid("start iterate must live on the configured grid");
    x = *start;
  }
  if (max_abs(x) > nl.radius)
    throw RadiusExceeded("start iterate already leaves the Lipschitz ball");

  const long long n = (long long)(x.size());
  GridFunction rhs = GridFunction::zeros(cfg.halfwidth, cfg.step);
  const auto fill_rhs = [&](const GridFunction& from) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < n; ++j) {
      const std::size_t i = (std::size_t)(j);
      double v = forcing[i];
      const double xt = from[i];
      const double xr = from[from.mirror(i)];
      for (const Monomial& m : nl.monomials)
        v += m.c * ipow(xt, m.p) * ipow(xr, m.q);
      rhs[i] = v;
    }
  };

  double prev_increment = -1.0;
  bool converged = false;
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    fill_rhs(x);
    GreenResult next = green_apply(p, rhs, kernel);
    report.interior_halfwidth = next.interior_halfwidth;
    if (max_abs(next.x) > nl.radius) {
      std::ostringstream msg;
      msg << "iterate " << iter << " has sup norm " << max_abs(next.x)
          << " outside the Lipschitz ball of radius " << nl.radius;
      throw RadiusExceeded(msg.str());
    }
    const double increment = max_abs_diff(next.x, x);
    if (prev_increment > 0.0)
      report.measured_rate =
          std::max(report.measured_rate, increment / prev_increment);
    x = std::move(next.x);
    report.iterations = iter;
    report.final_increment = increment;
    if (increment <= cfg.tol) {
      converged = true;
      break;
    }
    prev_increment = increment;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "no convergence to " << cfg.tol << " within " << cfg.max_iter
        << " iterations (last increment " << report.final_increment << ")";
    throw MaxIterations(msg.str());
  }

  // Self-check: the fixed point must satisfy the equation on the grid.
  // The floor absorbs the O(h^2) quadrature and stencil error; 10 tol
  // absorbs the remaining fixed-point gap.
  fill_rhs(x);
  report.residual = residual_grid(p, x, rhs);
  const double floor = cfg.step * cfg.step *
                       (1.0 + std::abs(p.a) + std::abs(p.b)) *
                       std::max(1.0, max_abs(rhs));
  if (report.residual > std::max(10.0 * cfg.tol, floor)) {
    std::ostringstream msg;
    msg << "converged iterate has grid residual " << report.residual
        << ", above the acceptance level "
        << std::max(10.0 * cfg.tol, floor);
    throw VerificationMismatch(msg.str());
  }
  return {std::move(x), std::move(report)};
}

}  // namespace reflode
