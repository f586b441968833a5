#include "reflode/run.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <variant>

#include "reflode/errors.hpp"
#include "reflode/format.hpp"
#include "reflode/grid.hpp"
#include "reflode/picard.hpp"

namespace reflode {

namespace {

// Report text is a flat list of "key = value" lines so diffs and greps
// stay trivial; notes and findings go last.
class ReportText {
public:
  void put(const std::string& key, const std::string& value) {
    out_ << key << " = " << value << "\n";
  }
  void put(const std::string& key, double value) { put(key, fmt_g17(value)); }
  void put(const std::string& key, bool value) {
    put(key, std::string(value ? "yes" : "no"));
  }
  void note(const std::string& text) { notes_.push_back(text); }
  std::string finish(const std::vector<Finding>& findings) {
    for (const std::string& n : notes_) out_ << "note = " << n << "\n";
    for (const Finding& f : findings) out_ << "finding = " << format_finding(f) << "\n";
    return out_.str();
  }

private:
  std::ostringstream out_;
  std::vector<std::string> notes_;
};

const char* regime_name(const SpectralData& data) {
  if (std::holds_alternative<Hyperbolic>(data)) return "Hyperbolic";
  if (std::holds_alternative<Oscillatory>(data)) return "Oscillatory";
  if (std::holds_alternative<Mixed>(data)) return "Mixed";
  return "Degenerate";
}

const char* relation_name(ModuleRelation r) {
  switch (r) {
    case ModuleRelation::Equal: return "Equal";
    case ModuleRelation::PSubsetOfQ: return "SolutionInsideForcing";
    case ModuleRelation::QSubsetOfP: return "ForcingInsideSolution";
    case ModuleRelation::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

std::string csv_closed(double halfwidth, double step,
                       const std::function<double(double)>& x,
                       const std::function<double(double)>& xdot,
                       const std::function<double(double)>& residual) {
  const GridFunction nodes = GridFunction::zeros(halfwidth, step);
  std::ostringstream out;
  out << "t,x,xdot,residual\n";
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double t = nodes.node(j);
    out << fmt_g17(t) << "," << fmt_g17(x(t)) << "," << fmt_g17(xdot(t))
        << "," << fmt_g17(residual(t)) << "\n";
  }
  return out.str();
}

// Grid-sampled solve: derivative by central difference (one-sided at the
// window edges), residual by the same centered stencil residual_grid uses
// (0 at the two edge nodes, which have no centered stencil).
std::string csv_grid(const EquationParams& p, const GridFunction& x,
                     const GridFunction& g_eff) {
  const double h = x.step();
  std::ostringstream out;
  out << "t,x,xdot,residual\n";
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) {
    double xd;
    if (j == 0) xd = (x[1] - x[0]) / h;
    else if (j == n - 1) xd = (x[n - 1] - x[n - 2]) / h;
    else xd = (x[j + 1] - x[j - 1]) / (2.0 * h);
    double res = 0.0;
    if (j > 0 && j + 1 < n) {
      const double d2 = (x[j + 1] - 2.0 * x[j] + x[j - 1]) / (h * h);
      res = d2 + p.a * x[j] + p.b * x[x.mirror(j)] - g_eff[j];
    }
    out << fmt_g17(x.node(j)) << "," << fmt_g17(x[j]) << "," << fmt_g17(xd)
        << "," << fmt_g17(res) << "\n";
  }
  return out.str();
}

// RK4 window: long enough to be meaningful, short enough that the e^{alpha t}
// error amplification of the hyperbolic case stays below the gate.
double rk4_halfwidth(const SpectralData& data, double step) {
  double T = 10.0;
  if (const auto* hyp = std::get_if<Hyperbolic>(&data))
    T = std::min(T, 18.0 / hyp->alpha);
  const long long n = std::max(1ll, (long long)(std::llround(T / step)));
  return double(n) * step;
}

void append_bound_lines(const EquationParams& p, const TrigPoly& g,
                        const TrigPoly& x, ReportText& rep,
                        std::vector<Finding>& findings) {
  const BoundReport bounds = bound_report(p, g, x);
  rep.put("bound_ratio", bounds.ratio);
  rep.put("kernel_constant", bounds.kernel_constant);
  rep.put("apriori_constant", bounds.apriori_constant);
  rep.put("kernel_bound_holds", bounds.kernel_holds);
  rep.put("apriori_bound_holds", bounds.apriori_holds);
  const std::string digest = forcing_digest(g);
  if (!bounds.apriori_holds) {
    findings.push_back({p.a, p.b, digest, "apriori_bound",
                        bounds.apriori_constant, bounds.ratio, false});
    rep.note(
        "measured amplification exceeds the classical sup-norm constant; "
        "recorded as a finding");
  }
  if (!bounds.kernel_holds) {
    findings.push_back({p.a, p.b, digest, "kernel_bound",
                        bounds.kernel_constant, bounds.ratio, false});
    throw VerificationMismatch(
        "sup-norm ratio " + fmt_g17(bounds.ratio) +
        " exceeds the kernel constant " + fmt_g17(bounds.kernel_constant));
  }
}

void append_module_line(const TrigPoly& x, const TrigPoly& g,
                        ReportText& rep) {
  const ModuleRelation rel = module_compare(x, g);
  rep.put("module_relation", std::string(relation_name(rel)));
  if (rel != ModuleRelation::Equal)
    throw VerificationMismatch(
        "solution frequency module differs from the forcing module");
}

SolveReport run_spectral(const ProblemSpec& spec, const SpectralData& data,
                         ReportText& rep) {
  const EquationParams p = spec.params;
  const TrigPoly& g = spec.forcing;
  std::vector<Finding> findings;
  const bool oscillatory = std::holds_alternative<Oscillatory>(data);

  double zero_margin = -1.0;
  if (oscillatory) {
    const MarginReport m = margins(p, g);
    rep.put("theorem_margin_mu", m.theorem_margin_mu);
    rep.put("theorem_margin_nu", m.theorem_margin_nu);
    rep.put("sharp_margin_odd", m.sharp_margin_odd);
    rep.put("sharp_margin_even", m.sharp_margin_even);
    zero_margin = std::min(m.theorem_margin_mu, m.theorem_margin_nu);
  }

  // Solve: the plain bounded solution, or the pinned member of the bounded
  // family when initial values are given.
  TrigPoly x(g.basis());
  double hom_sin = 0.0, hom_cos = 0.0, mu = 0.0, nu = 0.0;
  if (spec.ivp) {
    const Case2Solution sol =
        case2_ivp(p, g, spec.ivp->x0, spec.ivp->xdot0,
                  spec.solver.resonance_tol);
    x = sol.particular;
    hom_sin = sol.a_sin_mu;
    hom_cos = sol.b_cos_nu;
    mu = sol.mu;
    nu = sol.nu;
    rep.put("homogeneous_sin_mu", hom_sin);
    rep.put("homogeneous_cos_nu", hom_cos);
  } else {
    x = bounded_solution(p, g, spec.solver.resonance_tol);
  }
  rep.put("solution", forcing_digest(x));

  // Oracle 1: exact coefficient residual.
  const double res = residual_spectral(p, x, g);
  rep.put("residual_spectral", res);
  if (res > 1e-12 * std::max(1.0, x.coeff_l1()))
    throw VerificationMismatch("spectral residual " + fmt_g17(res) +
                               " is not at coefficient-noise level");

  // Oracle 2: dense harmonic balance.
  const TrigPoly hb = harmonic_balance_oracle(p, g, spec.solver.resonance_tol);
  const double hb_diff = max_coeff_diff(hb, x);
  rep.put("oracle_harmonic_balance", hb_diff);
  if (hb_diff > 1e-10 * std::max(1.0, x.coeff_l1()))
    throw VerificationMismatch("harmonic balance disagrees by " +
                               fmt_g17(hb_diff));

  // Oracle 3: forward/backward RK4 on the 4-D reduction.
  const double rk_h = 1e-3;
  const double rk_T = rk4_halfwidth(data, rk_h);
  const double ic_x = spec.ivp ? spec.ivp->x0 : x.eval(0.0);
  const double ic_v = spec.ivp ? spec.ivp->xdot0 : x.eval_derivative(0.0);
  const IvpResult traj = integrate_system(p, g, ic_x, ic_v, rk_T, rk_h);
  const auto full_eval = [&](double t) {
    return x.eval(t) + hom_sin * std::sin(mu * t) +
           hom_cos * std::cos(nu * t);
  };
  double rk_diff = 0.0;
  for (std::size_t j = 0; j < traj.forward.size(); ++j)
    rk_diff = std::max(rk_diff, std::abs(traj.forward[j] -
                                         full_eval(traj.forward.node(j))));
  rep.put("oracle_rk4", rk_diff);
  rep.put("oracle_rk4_halfwidth", rk_T);
  rep.put("rk4_reflection_mismatch", traj.reflection_mismatch);
  const double sol_scale =
      x.coeff_l1() + std::abs(hom_sin) + std::abs(hom_cos);
  if (rk_diff > 1e-5 * std::max(1.0, sol_scale))
    throw VerificationMismatch("rk4 trajectory deviates by " +
                               fmt_g17(rk_diff));

  if (std::holds_alternative<Hyperbolic>(data) && !g.empty())
    append_bound_lines(p, g, x, rep, findings);
  append_module_line(x, g, rep);

  if (oscillatory && zero_margin >= 0.0 &&
      zero_margin <= spec.solver.resonance_tol) {
    rep.note(
        "theorem margin is zero yet both coupled parity channels are "
        "nonresonant: the bounded almost periodic solution exists, so the "
        "zero-margin unboundedness claim fails here");
    const auto [g_lo, g_up] = g.sup_norm_bounds();
    const auto [x_lo, x_up] = x.sup_norm_bounds();
    findings.push_back({p.a, p.b, forcing_digest(g),
                        "zero_margin_implies_unbounded", 0.0,
                        g_lo > 0.0 ? x_up / g_lo : 0.0, false});
  }

  // Residual column: the coefficient-space residual plus the (floating
  // point) residue of the homogeneous terms, which is zero in exact math.
  const TrigPoly r = x.derivative(2) + p.a * x + p.b * x.reflected() - g;
  const double sin_res = hom_sin * ((p.a - p.b) - mu * mu);
  const double cos_res = hom_cos * ((p.a + p.b) - nu * nu);
  SolveReport out;
  out.csv = csv_closed(
      spec.solver.halfwidth, spec.solver.step, full_eval,
      [&](double t) {
        return x.eval_derivative(t) + hom_sin * mu * std::cos(mu * t) -
               hom_cos * nu * std::sin(nu * t);
      },
      [&](double t) {
        return r.eval(t) + sin_res * std::sin(mu * t) +
               cos_res * std::cos(nu * t);
      });
  out.findings = std::move(findings);
  out.text = rep.finish(out.findings);
  return out;
}

SolveReport run_grid(const ProblemSpec& spec, const RunOptions& opts,
                     ReportText& rep) {
  const EquationParams p = spec.params;
  const TrigPoly& g = spec.forcing;
  std::vector<Finding> findings;

  const KernelSpec kernel = kernel_for(p, opts.tail_cut);
  const GridFunction gf =
      sample(g, spec.solver.halfwidth, spec.solver.step);
  const GreenResult solved = green_apply(p, gf, kernel);
  rep.put("interior_halfwidth", solved.interior_halfwidth);

  // Oracle 1: independent spectral solution on interior nodes.
  const TrigPoly x_spec = bounded_solution(p, g, spec.solver.resonance_tol);
  const GridFunction x_ref =
      sample(x_spec, spec.solver.halfwidth, spec.solver.step);
  const double agree = max_abs_diff_interior(solved.x, x_ref,
                                             solved.interior_halfwidth);
  rep.put("oracle_spectral_interior", agree);
  const double gate =
      std::max(1e-4, 50.0 * spec.solver.step * spec.solver.step *
                         std::max(1.0, x_spec.coeff_l1()));
  if (agree > gate)
    throw VerificationMismatch("grid solution deviates from spectral by " +
                               fmt_g17(agree) + " on interior nodes");

  // Oracle 2: centered-stencil residual against the sampled forcing.
  const double res = residual_grid(p, solved.x, gf);
  rep.put("residual_grid", res);

  rep.put("solution", forcing_digest(x_spec));
  if (!g.empty()) append_bound_lines(p, g, x_spec, rep, findings);
  append_module_line(x_spec, g, rep);

  SolveReport out;
  out.csv = csv_grid(p, solved.x, gf);
  out.findings = std::move(findings);
  out.text = rep.finish(out.findings);
  return out;
}

SolveReport run_picard(const ProblemSpec& spec, const RunOptions& opts,
                       ReportText& rep) {
  const EquationParams p = spec.params;
  const NonlinearitySpec& nls = *spec.nonlinearity;
  const Nonlinearity nl{spec.forcing, nls.monomials, nls.radius};
  const PicardConfig cfg{spec.solver.tol, spec.solver.max_iter,
                         spec.solver.halfwidth, spec.solver.step,
                         opts.tail_cut};
  const auto [x, info] = picard_solve(p, nl, cfg);

  rep.put("lipschitz", info.lipschitz);
  rep.put("radius", nls.radius);
  rep.put("apriori_threshold", info.check.apriori_threshold);
  rep.put("apriori_contraction_ok", info.check.apriori_ok);
  rep.put("kernel_threshold", info.check.kernel_threshold);
  rep.put("kernel_contraction_ok", info.check.kernel_ok);
  rep.put("governing_rate", info.governing_rate);
  rep.put("governing_criterion", info.governing);
  rep.put("iterations", std::to_string(info.iterations));
  rep.put("final_increment", info.final_increment);
  rep.put("measured_rate", info.measured_rate);
  rep.put("interior_halfwidth", info.interior_halfwidth);
  // The oracle figure: an independent finite-difference check that the
  // fixed point satisfies its own effective equation.
  rep.put("oracle_fixed_point_residual", info.residual);

  // Rebuild the effective forcing f(t, x(t), x(-t)) for the CSV residual.
  GridFunction g_eff = sample(spec.forcing, cfg.halfwidth, cfg.step);
  for (std::size_t j = 0; j < g_eff.size(); ++j) {
    double v = g_eff[j];
    for (const Monomial& m : nls.monomials) {
      double term = m.c;
      for (unsigned k = 0; k < m.p; ++k) term *= x[j];
      for (unsigned k = 0; k < m.q; ++k) term *= x[x.mirror(j)];
      v += term;
    }
    g_eff[j] = v;
  }

  SolveReport out;
  out.csv = csv_grid(p, x, g_eff);
  out.text = rep.finish({});
  return out;
}

}  // namespace

SolveReport run(const ProblemSpec& spec, const RunOptions& opts) {
  const SpectralData data = classify(spec.params);

  ReportText rep;
  rep.put("a", spec.params.a);
  rep.put("b", spec.params.b);
  rep.put("forcing", forcing_digest(spec.forcing));
  rep.put("mode", std::string(mode_name(spec.solver.mode)));
  rep.put("regime", std::string(regime_name(data)));
  if (const auto* hyp = std::get_if<Hyperbolic>(&data)) {
    rep.put("alpha", hyp->alpha);
    rep.put("beta", hyp->beta);
  } else if (const auto* osc = std::get_if<Oscillatory>(&data)) {
    rep.put("mu", osc->mu);
    rep.put("nu", osc->nu);
  }

  if (std::holds_alternative<Mixed>(data) ||
      std::holds_alternative<Degenerate>(data))
    throw UnsupportedCase(
        std::string(regime_name(data)) +
        " regime: no dichotomy and no uniform nonresonance to solve with");

  switch (spec.solver.mode) {
    case SolveMode::Spectral: return run_spectral(spec, data, rep);
    case SolveMode::Grid: return run_grid(spec, opts, rep);
    case SolveMode::Picard: return run_picard(spec, opts, rep);
  }
  throw InvalidParams("unknown solve mode");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const Resonance*>(&e) != nullptr ||
      dynamic_cast<const SingularSystem*>(&e) != nullptr)
    return 2;
  if (dynamic_cast<const NonContractive*>(&e) != nullptr ||
      dynamic_cast<const RadiusExceeded*>(&e) != nullptr ||
      dynamic_cast<const MaxIterations*>(&e) != nullptr)
    return 3;
  if (dynamic_cast<const UnsupportedCase*>(&e) != nullptr) return 4;
  if (dynamic_cast<const ParseError*>(&e) != nullptr ||
      dynamic_cast<const SemanticError*>(&e) != nullptr ||
      dynamic_cast<const InvalidParams*>(&e) != nullptr ||
      dynamic_cast<const InvalidGrid*>(&e) != nullptr ||
      dynamic_cast<const BasisMismatch*>(&e) != nullptr ||
      dynamic_cast<const FrequencyNearZero*>(&e) != nullptr)
    return 5;
  if (dynamic_cast<const VerificationMismatch*>(&e) != nullptr) return 6;
  return 1;
}

}  // namespace reflode
