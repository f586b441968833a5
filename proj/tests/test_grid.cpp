#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "reflode/errors.hpp"
#include "reflode/grid.hpp"
#include "reflode/spectral.hpp"

using namespace reflode;

namespace {

TrigPoly poly2(std::vector<std::tuple<int, int, double, double>> terms) {
  TrigPoly p(FrequencyBasis{{1.0, std::sqrt(2.0)}});
  for (auto& [c1, c2, A, B] : terms)
    p.add_term({Rational(c1), Rational(c2)}, A, B);
  return p;
}

}  // namespace

TEST_CASE("grid validation and node geometry") {
  CHECK(GridFunction::node_count(40.0, 0.005) == 16001);
  CHECK_THROWS_AS(GridFunction::zeros(1.0, 0.3), InvalidGrid);
  CHECK_THROWS_AS(GridFunction::zeros(-1.0, 0.1), InvalidGrid);
  CHECK_THROWS_AS(GridFunction(2.0, 0.5, std::vector<double>(8, 0.0)),
                  InvalidGrid);
  CHECK_THROWS_AS(
      GridFunction(2.0, 0.5, std::vector<double>(9, std::nan(""))),
      InvalidGrid);

  const GridFunction f = GridFunction::zeros(2.0, 0.25);
  CHECK(f.size() == 17);
  CHECK(f.center() == 8);
  CHECK(f.node(f.center()) == 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(f.node(f.mirror(j)) == -f.node(j));  // exact, not approximate
  }
  CHECK(f.mirror(0) == 16);
  CHECK(f.same_grid(GridFunction::zeros(2.0, 0.25)));
  CHECK_FALSE(f.same_grid(GridFunction::zeros(2.0, 0.5)));
}

TEST_CASE("sampling matches pointwise evaluation exactly") {
  const TrigPoly p =
      poly2({{0, 0, 1.5, 0.0}, {1, 0, 2.0, 7.0}, {0, 1, 0.0, -5.0}});
  const GridFunction s = sample(p, 3.0, 0.1);
  for (std::size_t j = 0; j < s.size(); ++j)
    CHECK(s[j] == p.eval(s.node(j)));
}

TEST_CASE("interior helpers") {
  const GridFunction f = GridFunction::zeros(2.0, 0.5);
  const auto [lo, hi] = interior_range(f, 1.2);
  CHECK(lo == 2);
  CHECK(hi == 6);
  const auto full = interior_range(f, 99.0);
  CHECK(full.first == 0);
  CHECK(full.second == f.size() - 1);
}

TEST_CASE("kernel spec construction and validation") {
  const KernelSpec ks = kernel_for({-3.0, 1.0});
  CHECK(ks.alpha == doctest::Approx(2.0));
  CHECK(ks.beta == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(kernel_for({4.0, 2.0}), UnsupportedCase);
  CHECK_THROWS_AS(kernel_for({-3.0, 1.0}, 0.0), InvalidParams);
  CHECK_THROWS_AS(kernel_for({-3.0, 1.0}, 1.0), InvalidParams);

  const GridFunction g = GridFunction::zeros(5.0, 0.01);
  CHECK_THROWS_AS(green_apply({-3.0, 1.0}, g, KernelSpec{1.0, 1.0, 1e-7}),
                  InvalidParams);
  CHECK_THROWS_AS(green_apply({4.0, 2.0}, g, KernelSpec{2.0, 1.4, 1e-7}),
                  UnsupportedCase);
}

TEST_CASE("green quadrature reproduces the spectral solution") {
  const EquationParams prm{-3.0, 1.0};
  const TrigPoly g =
      poly2({{1, 0, 0.7, 0.0}, {2, 0, 0.0, -0.4}, {0, 1, 0.2, 0.1}});
  const TrigPoly x = bounded_solution(prm, g);

  const double T = 25.0, h = 0.01;
  const GridFunction gs = sample(g, T, h);
  const KernelSpec ks = kernel_for(prm);
  const GreenResult res = green_apply(prm, gs, ks);
  // skirt = ln(1e7)/sqrt(2) ~ 11.4
  CHECK(res.interior_halfwidth == doctest::Approx(25.0 - std::log(1e7) / std::sqrt(2.0)));

  const GridFunction xs = sample(x, T, h);
  const double err = max_abs_diff_interior(res.x, xs, res.interior_halfwidth);
  CHECK(err < 1e-4);
  // near the boundary the truncated tail shows; the full-range error must
  // be visibly worse than the interior error for the skirt to mean anything
  CHECK(max_abs_diff(res.x, xs) > err);
}

TEST_CASE("parallel and reference kernels are bit-identical") {
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> noise(1001);
  for (double& v : noise) v = dist(rng);
  const GridFunction g(5.0, 0.01, noise);
  const EquationParams prm{-3.0, 1.0};
  const KernelSpec ks = kernel_for(prm);
  const GreenResult a = green_apply(prm, g, ks);
  const GreenResult b = green_apply_reference(prm, g, ks);
  CHECK(a.interior_halfwidth == b.interior_halfwidth);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(a.x[j] == b.x[j]);
}

TEST_CASE("grid residual of exact solutions shrinks like h^2") {
  const EquationParams prm{-3.0, 1.0};
  const TrigPoly g = poly2({{1, 0, 1.0, 0.5}, {0, 1, 0.0, 0.3}});
  const TrigPoly x = bounded_solution(prm, g);
  const double T = 10.0;
  double prev = 0.0;
  std::vector<double> res;
  for (double h : {0.02, 0.01, 0.005}) {
    const double r = residual_grid(prm, sample(x, T, h), sample(g, T, h));
    res.push_back(r);
  }
  CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.2));
  CHECK(res[1] / res[2] == doctest::Approx(4.0).epsilon(0.2));
  (void)prev;

  CHECK_THROWS_AS(
      residual_grid(prm, sample(x, 10.0, 0.01), sample(g, 10.0, 0.02)),
      InvalidGrid);
}
