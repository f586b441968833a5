#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "reflode/spectral.hpp"
#include "reflode/trigpoly.hpp"

namespace reflode {

// Uniform symmetric grid on [-T, T] with 2N+1 nodes.  Node j sits at
// (j - N) * h, so t = 0 is exact and node(mirror(j)) == -node(j) bitwise,
// which keeps reflection handling free of rounding.
class GridFunction {
public:
  GridFunction(double halfwidth, double step, std::vector<double> samples);
  static GridFunction zeros(double halfwidth, double step);
  // 2N+1 for validated (halfwidth, step); throws InvalidGrid otherwise.
  static std::size_t node_count(double halfwidth, double step);

  double halfwidth() const { return halfwidth_; }
  double step() const { return step_; }
  std::size_t size() const { return samples_.size(); }
  std::size_t center() const { return samples_.size() / 2; }
  double node(std::size_t j) const {
    return (double(j) - double(center())) * step_;
  }
  std::size_t mirror(std::size_t j) const { return samples_.size() - 1 - j; }
  double operator[](std::size_t j) const { return samples_[j]; }
  double& operator[](std::size_t j) { return samples_[j]; }
  const std::vector<double>& samples() const { return samples_; }
  bool same_grid(const GridFunction& o) const {
    return halfwidth_ == o.halfwidth_ && step_ == o.step_ &&
           samples_.size() == o.samples_.size();
  }

private:
  double halfwidth_;
  double step_;
  std::vector<double> samples_;
};

// Node values of p; per node the arithmetic matches TrigPoly::eval exactly.
GridFunction sample(const TrigPoly& p, double halfwidth, double step);

double max_abs(const GridFunction& f);
double max_abs_diff(const GridFunction& a, const GridFunction& b);
// Same, restricted to |t| <= interior.
double max_abs_diff_interior(const GridFunction& a, const GridFunction& b,
                             double interior);
// Inclusive index range of nodes with |t(j)| <= interior.
std::pair<std::size_t, std::size_t> interior_range(const GridFunction& f,
                                                   double interior);

// Exponential kernel rates for the hyperbolic regime plus the relative
// level below which the truncated integral tail is declared negligible.
struct KernelSpec {
  double alpha;
  double beta;
  double tail_cut = 1e-7;
};

KernelSpec kernel_for(const EquationParams& p, double tail_cut = 1e-7);

struct GreenResult {
  GridFunction x;
  // Truncating the convolution to [-T, T] loses tail mass; within
  // |t| <= interior_halfwidth the loss is below tail_cut relative to
  // sup|g| times the kernel norm.
  double interior_halfwidth;
};

// Bounded-solution operator in the hyperbolic regime:
//   x(t) = -1/(2 alpha) int e^{-alpha|t-s|} g_odd(s) ds
//          -1/(2 beta)  int e^{-beta |t-s|} g_even(s) ds
// by trapezoid quadrature over the grid.  green_apply runs the OpenMP
// row-parallel kernel; green_apply_reference the serial loop.  Both share
// the per-row summation, so results are bit-identical.
GreenResult green_apply(const EquationParams& p, const GridFunction& g,
                        const KernelSpec& spec);
GreenResult green_apply_reference(const EquationParams& p,
                                  const GridFunction& g,
                                  const KernelSpec& spec);

// max_j |D2 x + a x + b x(-t) - g| over interior nodes (edges have no
// centered second difference), D2 the standard three-point stencil.
double residual_grid(const EquationParams& p, const GridFunction& x,
                     const GridFunction& g);

}  // namespace reflode
