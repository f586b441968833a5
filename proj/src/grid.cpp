#include "reflode/grid.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "reflode/errors.hpp"

namespace reflode {

namespace {

std::int64_t half_node_count(double halfwidth, double step) {
  if (!std::isfinite(halfwidth) || halfwidth <= 0.0)
    throw InvalidGrid("grid halfwidth must be finite and positive");
  if (!std::isfinite(step) || step <= 0.0)
    throw InvalidGrid("grid step must be finite and positive");
  const std::int64_t n = std::llround(halfwidth / step);
  if (n < 1) throw InvalidGrid("grid must contain at least three nodes");
  if (std::abs(double(n) * step - halfwidth) > 1e-9 * std::max(1.0, halfwidth))
    throw InvalidGrid("grid halfwidth is not an integer multiple of step");
  return n;
}

}  // namespace

GridFunction::GridFunction(double halfwidth, double step,
                           std::vector<double> samples)
    : halfwidth_(halfwidth), step_(step), samples_(std::move(samples)) {
  const std::int64_t n = half_node_count(halfwidth, step);
  if (samples_.size() != std::size_t(2 * n + 1))
    throw InvalidGrid("sample count does not match 2N+1 nodes");
  for (double v : samples_)
    if (!std::isfinite(v)) throw InvalidGrid("grid samples must be finite");
}

GridFunction GridFunction::zeros(double halfwidth, double step) {
  const std::int64_t n = half_node_count(halfwidth, step);
  return GridFunction(halfwidth, step,
                      std::vector<double>(std::size_t(2 * n + 1), 0.0));
}

std::size_t GridFunction::node_count(double halfwidth, double step) {
  return std::size_t(2 * half_node_count(halfwidth, step) + 1);
}

GridFunction sample(const TrigPoly& p, double halfwidth, double step) {
  GridFunction out = GridFunction::zeros(halfwidth, step);
  const std::vector<Harmonic> hs = p.harmonics();
  const std::int64_t n = std::int64_t(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < n; ++j) {
    const double t = out.node(std::size_t(j));
    double v = 0.0;
    for (const Harmonic& m : hs) {
      const double lt = m.lambda * t;
      v += m.cos_c * std::cos(lt) + m.sin_c * std::sin(lt);
    }
    out[std::size_t(j)] = v;
  }
  return out;
}

double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.samples()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) throw InvalidGrid("max_abs_diff: grids differ");
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

std::pair<std::size_t, std::size_t> interior_range(const GridFunction& f,
                                                   double interior) {
  if (!(interior >= 0.0))
    throw InvalidGrid("interior_range: nonnegative width required");
  const std::size_t c = f.center();
  auto k = std::size_t(std::floor(interior / f.step() + 1e-9));
  k = std::min(k, c);
  return {c - k, c + k};
}

double max_abs_diff_interior(const GridFunction& a, const GridFunction& b,
                             double interior) {
  if (!a.same_grid(b)) throw InvalidGrid("max_abs_diff_interior: grids differ");
  const auto [lo, hi] = interior_range(a, interior);
  double m = 0.0;
  for (std::size_t j = lo; j <= hi; ++j)
    m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

KernelSpec kernel_for(const EquationParams& p, double tail_cut) {
  const auto s = classify(p);
  const auto* hyp = std::get_if<Hyperbolic>(&s);
  if (!hyp)
    throw UnsupportedCase(
        "kernel_for: exponential kernels require the hyperbolic regime "
        "(a < b < -a)");
  if (!(tail_cut > 0.0) || !(tail_cut < 1.0))
    throw InvalidParams("kernel_for: tail_cut must lie in (0, 1)");
  return {hyp->alpha, hyp->beta, tail_cut};
}

namespace {

// Trapezoid-weighted input (forward and reversed) and kernel power table
// for one rate.  pw[k] is exp(-gamma k h), each entry from one exp call so
// the table is identical however many threads later read it.  The reversed
// copy turns the "sources left of t_i" half of the row sum into a forward
// contiguous dot product.
struct ConvPlan {
  std::vector<double> wu;
  std::vector<double> wu_rev;
  std::vector<double> pw;
  double scale;
};

ConvPlan make_plan(const GridFunction& u, double gamma) {
  const std::size_t n = u.size();
  ConvPlan plan;
  plan.wu = u.samples();
  plan.wu.front() *= 0.5;
  plan.wu.back() *= 0.5;
  plan.wu_rev.assign(plan.wu.rbegin(), plan.wu.rend());
  plan.pw.resize(n);
  const double h = u.step();
  for (std::size_t k = 0; k < n; ++k)
    plan.pw[k] = std::exp(-gamma * (double(k) * h));
  plan.scale = -h / (2.0 * gamma);
  return plan;
}

// Row i of sum_j pw[|i-j|] wu[j].  Shared by the serial and OpenMP drivers
// and compiled once, so a row's value never depends on which thread
// computes it.  The simd reductions fix the lane layout at build time.
double kernel_row(const ConvPlan& plan, std::size_t i) {
  const double* pw = plan.pw.data();
  const std::size_t n = plan.wu.size();
  // wu_rev[(n-1-i) + k] == wu[i - k]
  const double* wl = plan.wu_rev.data() + (n - 1 - i);
  double left = 0.0;
#pragma omp simd reduction(+ : left)
  for (std::size_t k = 1; k <= i; ++k) left += pw[k] * wl[k];
  const double* wr = plan.wu.data() + i;
  double right = 0.0;
#pragma omp simd reduction(+ : right)
  for (std::size_t k = 0; k < n - i; ++k) right += pw[k] * wr[k];
  return left + right;
}

// parity +1: u even (so is y); parity -1: u odd (so is y).  Rows left of
// center are mirrors of computed rows, cutting the quadratic work in half.
GridFunction convolve(const GridFunction& u, double gamma, double parity,
                      bool parallel) {
  const ConvPlan plan = make_plan(u, gamma);
  GridFunction y = GridFunction::zeros(u.halfwidth(), u.step());
  const std::int64_t n = std::int64_t(u.size());
  const std::int64_t c = std::int64_t(u.center());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = c; i < n; ++i)
      y[std::size_t(i)] = plan.scale * kernel_row(plan, std::size_t(i));
  } else {
    for (std::int64_t i = c; i < n; ++i)
      y[std::size_t(i)] = plan.scale * kernel_row(plan, std::size_t(i));
  }
  for (std::int64_t i = 0; i < c; ++i)
    y[std::size_t(i)] = parity * y[y.mirror(std::size_t(i))];
  return y;
}

GreenResult green_core(const EquationParams& p, const GridFunction& g,
                       const KernelSpec& spec, bool parallel) {
  const KernelSpec expect = kernel_for(p, spec.tail_cut);
  if (std::abs(spec.alpha - expect.alpha) > 1e-9 * (1.0 + expect.alpha) ||
      std::abs(spec.beta - expect.beta) > 1e-9 * (1.0 + expect.beta))
    throw InvalidParams("green_apply: kernel rates do not match coefficients");

  const std::size_t n = g.size();
  GridFunction ge = GridFunction::zeros(g.halfwidth(), g.step());
  GridFunction go = GridFunction::zeros(g.halfwidth(), g.step());
  for (std::size_t j = 0; j < n; ++j) {
    const double m = g[g.mirror(j)];
    ge[j] = (g[j] + m) / 2.0;
    go[j] = (g[j] - m) / 2.0;
  }
  const GridFunction xo = convolve(go, spec.alpha, -1.0, parallel);
  const GridFunction xe = convolve(ge, spec.beta, +1.0, parallel);
  GridFunction x = GridFunction::zeros(g.halfwidth(), g.step());
  for (std::size_t j = 0; j < n; ++j) x[j] = xo[j] + xe[j];

  const double gamma_min = std::min(spec.alpha, spec.beta);
  const double skirt = std::log(1.0 / spec.tail_cut) / gamma_min;
  return {std::move(x), std::max(0.0, g.halfwidth() - skirt)};
}

}  // namespace

GreenResult green_apply(const EquationParams& p, const GridFunction& g,
                        const KernelSpec& spec) {
  return green_core(p, g, spec, true);
}

GreenResult green_apply_reference(const EquationParams& p,
                                  const GridFunction& g,
                                  const KernelSpec& spec) {
  return green_core(p, g, spec, false);
}

double residual_grid(const EquationParams& p, const GridFunction& x,
                     const GridFunction& g) {
  if (!x.same_grid(g)) throw InvalidGrid("residual_grid: grids differ");
  const double h2 = x.step() * x.step();
  const std::int64_t n = std::int64_t(x.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::int64_t j = 1; j < n - 1; ++j) {
    const auto i = std::size_t(j);
    const double d2 = (x[i - 1] - 2.0 * x[i] + x[i + 1]) / h2;
    const double r = d2 + p.a * x[i] + p.b * x[x.mirror(i)] - g[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace reflode
