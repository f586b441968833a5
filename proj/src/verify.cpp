#include "reflode/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <vector>

#include "reflode/errors.hpp"
#include "reflode/format.hpp"
#include "reflode/rational.hpp"

namespace reflode {

double residual_spectral(const EquationParams& p, const TrigPoly& x,
                         const TrigPoly& g) {
  const TrigPoly r = x.derivative(2) + p.a * x + p.b * x.reflected() - g;
  return r.coeff_l1();
}

TrigPoly harmonic_balance_oracle(const EquationParams& p, const TrigPoly& g,
                                 double resonance_tol) {
  classify(p);
  if (!std::isfinite(resonance_tol) || resonance_tol <= 0.0)
    throw InvalidParams("resonance tolerance must be finite and positive");

  // Unknowns: one cosine amplitude per frequency, plus a sine amplitude
  // for nonzero frequencies.  Row r and column r refer to the same
  // (frequency, component) slot.
  struct Slot {
    std::size_t freq;
    bool is_sin;
  };
  std::vector<Frequency> freqs;
  std::map<Frequency, std::size_t> freq_index;
  for (const auto& [f, c] : g.terms()) {
    freq_index.emplace(f, freqs.size());
    freqs.push_back(f);
  }
  std::vector<Slot> slots;
  std::vector<std::size_t> cos_slot(freqs.size()), sin_slot(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    cos_slot[i] = slots.size();
    slots.push_back({i, false});
    if (!freqs[i].is_zero()) {
      sin_slot[i] = slots.size();
      slots.push_back({i, true});
    }
  }
  const std::size_t m = slots.size();
  if (m == 0) return TrigPoly(g.basis());

  // Column j holds the coefficients of L e_j, the operator applied
  // symbolically to the j-th unit basis function.
  std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
  std::vector<double> rhs(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    TrigPoly e(g.basis());
    e.add_term(freqs[slots[j].freq].coords(), slots[j].is_sin ? 0.0 : 1.0,
               slots[j].is_sin ? 1.0 : 0.0);
    const TrigPoly Le = e.derivative(2) + p.a * e + p.b * e.reflected();
    for (const auto& [f, c] : Le.terms()) {
      const auto it = freq_index.find(f);
      if (it == freq_index.end()) continue;
      A[cos_slot[it->second]][j] = c.cos_c;
      if (!f.is_zero()) A[sin_slot[it->second]][j] = c.sin_c;
    }
  }
  double g_scale = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const TrigCoeff& c = g.terms().at(freqs[slots[r].freq]);
    rhs[r] = slots[r].is_sin ? c.sin_c : c.cos_c;
    g_scale = std::max(g_scale, std::abs(rhs[r]));
  }
  double a_scale = 0.0;
  for (const auto& row : A)
    for (double v : row) a_scale = std::max(a_scale, std::abs(v));

  // Elimination with partial pivoting.  A column whose best pivot is
  // negligible is a kernel direction: its amplitude stays free (zero),
  // and the corresponding equation must end up trivial.
  const double pivot_tol = resonance_tol * std::max(1.0, a_scale);
  const double rhs_tol = resonance_tol * std::max(1.0, g_scale);
  std::vector<int> pivot_of_col(m, -1);
  std::vector<char> row_used(m, 0);
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t best = m;
    double best_val = pivot_tol;
    for (std::size_t r = 0; r < m; ++r)
      if (!row_used[r] && std::abs(A[r][col]) > best_val) {
        best = r;
        best_val = std::abs(A[r][col]);
      }
    if (best == m) continue;
    row_used[best] = 1;
    pivot_of_col[col] = int(best);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == best || A[r][col] == 0.0) continue;
      const double f = A[r][col] / A[best][col];
      for (std::size_t k = col; k < m; ++k) A[r][k] -= f * A[best][k];
      A[r][col] = 0.0;
      rhs[r] -= f * rhs[best];
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (row_used[r] || std::abs(rhs[r]) <= rhs_tol) continue;
    std::ostringstream msg;
    msg << "forcing drives an annihilated component ("
        << (slots[r].is_sin ? "sin" : "cos") << " at |lambda| = "
        << std::abs(freqs[slots[r].freq].value(g.basis())) << ")";
    throw SingularSystem(msg.str());
  }

  std::vector<double> sol(m, 0.0);
  for (std::size_t col = 0; col < m; ++col)
    if (pivot_of_col[col] >= 0) {
      const std::size_t r = std::size_t(pivot_of_col[col]);
      sol[col] = rhs[r] / A[r][col];
    }

  TrigPoly x(g.basis());
  for (std::size_t i = 0; i < freqs.size(); ++i)
    x.add_term(freqs[i].coords(), sol[cos_slot[i]],
               freqs[i].is_zero() ? 0.0 : sol[sin_slot[i]]);
  return x;
}

namespace {

SystemState state_rhs(const EquationParams& p, const TrigPoly& g, double t,
                      const SystemState& s) {
  return {s.xdot, -s.xdot_reflected,
          -p.a * s.x - p.b * s.x_reflected + g.eval(t),
          p.b * s.x + p.a * s.x_reflected - g.eval(-t)};
}

SystemState advance(const SystemState& s, double h, const SystemState& k) {
  return {s.x + h * k.x, s.x_reflected + h * k.x_reflected,
          s.xdot + h * k.xdot, s.xdot_reflected + h * k.xdot_reflected};
}

SystemState rk4_step(const EquationParams& p, const TrigPoly& g, double t,
                     const SystemState& s, double h) {
  const SystemState k1 = state_rhs(p, g, t, s);
  const SystemState k2 = state_rhs(p, g, t + 0.5 * h, advance(s, 0.5 * h, k1));
  const SystemState k3 = state_rhs(p, g, t + 0.5 * h, advance(s, 0.5 * h, k2));
  const SystemState k4 = state_rhs(p, g, t + h, advance(s, h, k3));
  const double w = h / 6.0;
  return {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.x_reflected + w * (k1.x_reflected + 2.0 * k2.x_reflected +
                               2.0 * k3.x_reflected + k4.x_reflected),
          s.xdot + w * (k1.xdot + 2.0 * k2.xdot + 2.0 * k3.xdot + k4.xdot),
          s.xdot_reflected +
              w * (k1.xdot_reflected + 2.0 * k2.xdot_reflected +
                   2.0 * k3.xdot_reflected + k4.xdot_reflected)};
}

// One sweep from t = 0 in the direction of h's sign; the reflected
// components land on the mirrored half, so the sweep fills every node.
void sweep(const EquationParams& p, const TrigPoly& g, double x0,
           double xdot0, double h, GridFunction& x, GridFunction* xdot) {
  const std::size_t c = x.center();
  SystemState s{x0, x0, xdot0, xdot0};
  const auto put = [&](std::size_t k, const SystemState& st) {
    const std::size_t fwd = h > 0.0 ? c + k : c - k;
    x[fwd] = st.x;
    x[x.mirror(fwd)] = st.x_reflected;
    if (xdot != nullptr) {
      (*xdot)[fwd] = st.xdot;
      (*xdot)[x.mirror(fwd)] = st.xdot_reflected;
    }
  };
  put(0, s);
  for (std::size_t k = 1; k <= c; ++k) {
    const double t = double(k - 1) * h;
    s = rk4_step(p, g, t, s, h);
    put(k, s);
  }
}

}  // namespace

IvpResult integrate_system(const EquationParams& p, const TrigPoly& g,
                           double x0, double xdot0, double halfwidth,
                           double step) {
  classify(p);
  if (!std::isfinite(x0) || !std::isfinite(xdot0))
    throw InvalidParams("initial values must be finite");
  GridFunction fx = GridFunction::zeros(halfwidth, step);
  GridFunction fv = GridFunction::zeros(halfwidth, step);
  GridFunction bx = GridFunction::zeros(halfwidth, step);
  sweep(p, g, x0, xdot0, step, fx, &fv);
  sweep(p, g, x0, xdot0, -step, bx, nullptr);
  const double mismatch = max_abs_diff(fx, bx);
  return {std::move(fx), std::move(bx), std::move(fv), mismatch};
}

BoundReport bound_report(const EquationParams& p, const TrigPoly& g,
                         const TrigPoly& x) {
  const SpectralData data = classify(p);
  const auto* hyp = std::get_if<Hyperbolic>(&data);
  if (hyp == nullptr)
    throw UnsupportedCase(
        "stability constants exist only in the exponential-dichotomy "
        "regime (a < b < -a)");
  BoundReport r{};
  r.kernel_constant =
      1.0 / (hyp->alpha * hyp->alpha) + 1.0 / (hyp->beta * hyp->beta);
  r.apriori_constant = 2.0 / hyp->alpha + 1.0;
  r.kernel_holds = true;
  r.apriori_holds = true;

  const auto [x_lo, x_up] = x.sup_norm_bounds();
  if (x_up == 0.0) return r;  // zero solution: ratio 0, nothing violated
  const auto [g_lo, g_up] = g.sup_norm_bounds();
  if (g_lo <= 0.0)
    throw InvalidParams("forcing must be nonzero to form a sup-norm ratio");
  r.ratio = x_up / g_lo;
  const double certain = x_lo / g_up;
  r.kernel_holds = !(certain > r.kernel_constant);
  r.apriori_holds = !(certain > r.apriori_constant);
  return r;
}

std::string forcing_digest(const TrigPoly& g) {
  if (g.empty()) return "0";
  std::string out;
  for (const auto& [f, c] : g.terms()) {
    if (!out.empty()) out += ";";
    out += fmt_g17(c.cos_c);
    out += ",";
    out += fmt_g17(c.sin_c);
    out += "@";
    bool first = true;
    for (const Rational& q : f.coords()) {
      if (!first) out += ",";
      out += to_string(q);
      first = false;
    }
  }
  return out;
}

std::string format_finding(const Finding& f) {
  std::string out = "a=" + fmt_g17(f.a) + " b=" + fmt_g17(f.b) +
                    " forcing=" + f.forcing + " constant=" + f.constant_name +
                    ":" + fmt_g17(f.constant_value) +
                    " ratio=" + fmt_g17(f.ratio) +
                    " verdict=" + (f.holds ? "holds" : "violated");
  return out;
}

}  // namespace reflode
