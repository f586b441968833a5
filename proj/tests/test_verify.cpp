#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "reflode/errors.hpp"
#include "reflode/spectral.hpp"
#include "reflode/trigpoly.hpp"
#include "reflode/verify.hpp"

using namespace reflode;

namespace {

TrigPoly poly1(std::vector<std::tuple<int, double, double>> terms) {
  TrigPoly p(FrequencyBasis{{1.0}});
  for (auto& [k, A, B] : terms) p.add_term({Rational(k)}, A, B);
  return p;
}

}  // namespace

TEST_CASE("spectral residual separates solutions from non-solutions") {
  const EquationParams p{5.0, 1.0};
  const TrigPoly g = poly1({{1, 1.0, 1.0}});
  const TrigPoly x = bounded_solution(p, g);
  CHECK(residual_spectral(p, x, g) <= 1e-15);

  TrigPoly off = x;
  off.add_term({Rational(1)}, 1e-6, 0.0);
  const double r = residual_spectral(p, off, g);
  CHECK(r >= 1e-7);
  CHECK(r <= 1e-4);
}

TEST_CASE("harmonic balance agrees with the channel solver") {
  // Single generator, both regimes.
  for (auto [a, b] : {std::pair{-3.0, 1.0}, {4.0, 2.0}, {5.0, 1.0}}) {
    const EquationParams p{a, b};
    const TrigPoly g = poly1({{1, 2.0, -0.5}, {3, 0.25, 0.75}});
    const TrigPoly hb = harmonic_balance_oracle(p, g);
    CHECK(max_coeff_diff(hb, bounded_solution(p, g)) <= 1e-12);
    CHECK(residual_spectral(p, hb, g) <= 1e-12);
  }

  // Two generators, incommensurate frequencies.
  TrigPoly g2(FrequencyBasis{{1.0, std::sqrt(2.0)}});
  g2.add_term({Rational(1), Rational(0)}, 1.0, 0.5);
  g2.add_term({Rational(0), Rational(1)}, -0.75, 0.0);
  g2.add_term({Rational(1), Rational(-1)}, 0.0, 0.3);
  const EquationParams p2{-3.0, 1.0};
  CHECK(max_coeff_diff(harmonic_balance_oracle(p2, g2),
                       bounded_solution(p2, g2)) <= 1e-12);

  // Constant forcing: amplitude 5 / (a + b) = -2.5 exactly.
  TrigPoly c(FrequencyBasis{{1.0}});
  c.add_term({Rational(0)}, 5.0, 0.0);
  const TrigPoly hb = harmonic_balance_oracle(p2, c);
  CHECK(hb.terms().begin()->second.cos_c == -2.5);
  CHECK(residual_spectral(p2, hb, c) == 0.0);
}

TEST_CASE("harmonic balance randomized cross-check") {
  std::mt19937 rng(20240820u);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const EquationParams p = (trial % 2 == 0) ? EquationParams{-3.0, 1.0}
                                              : EquationParams{4.0, 2.0};
    TrigPoly g(FrequencyBasis{{1.0, std::sqrt(2.0)}});
    for (int term = 0; term < 4; ++term) {
      const int k1 = coord(rng), k2 = coord(rng);
      const double lam =
          std::abs(double(k1) + double(k2) * std::sqrt(2.0));
      // Keep well clear of the oscillatory resonances at sqrt(2), sqrt(6).
      if (std::abs(lam - std::sqrt(2.0)) < 0.2 ||
          std::abs(lam - std::sqrt(6.0)) < 0.2)
        continue;
      g.add_term({Rational(k1), Rational(k2)}, amp(rng), amp(rng));
    }
    if (g.empty()) continue;
    const TrigPoly hb = harmonic_balance_oracle(p, g);
    CHECK(max_coeff_diff(hb, bounded_solution(p, g)) <= 1e-11);
    CHECK(residual_spectral(p, hb, g) <= 1e-11);
  }
}

TEST_CASE("harmonic balance resonance handling") {
  const EquationParams p{2.0, 1.0};  // odd divisor (a - b) - 1 = 0 at lambda=1

  // Forcing the dead sine component is flagged.
  CHECK_THROWS_AS(harmonic_balance_oracle(p, poly1({{1, 0.0, 1.0}})),
                  SingularSystem);

  // A cosine forcing at the same frequency is fine: the sine amplitude is
  // free and set to zero, matching the channel solver.
  const TrigPoly x = harmonic_balance_oracle(p, poly1({{1, 1.0, 0.0}}));
  CHECK(max_coeff_diff(x, poly1({{1, 0.5, 0.0}})) == 0.0);

  // Near-resonant divisors inside the tolerance count as singular.
  const EquationParams near{2.0, 1.0 + 1e-12};
  CHECK_THROWS_AS(harmonic_balance_oracle(near, poly1({{1, 0.0, 1.0}})),
                  SingularSystem);
  CHECK_NOTHROW(harmonic_balance_oracle(near, poly1({{1, 0.0, 1.0}}), 1e-14));
}

TEST_CASE("rk4 trajectory matches closed forms") {
  // Oscillatory case: even divisor (a + b) - lambda^2 = 6 - 4 = 2, so
  // x = 0.5 cos 2t solves x'' + 4x + 2x(-t) = cos 2t.
  const EquationParams p{4.0, 2.0};
  TrigPoly g(FrequencyBasis{{2.0}});
  g.add_term({Rational(1)}, 1.0, 0.0);
  const TrigPoly x = bounded_solution(p, g);

  const IvpResult traj = integrate_system(p, g, 0.5, 0.0, 10.0, 1e-3);
  double worst_x = 0.0, worst_v = 0.0;
  for (std::size_t j = 0; j < traj.forward.size(); ++j) {
    const double t = traj.forward.node(j);
    worst_x = std::max(worst_x, std::abs(traj.forward[j] - x.eval(t)));
    worst_v = std::max(worst_v, std::abs(traj.xdot[j] - x.eval_derivative(t)));
  }
  CHECK(worst_x <= 1e-6);
  CHECK(worst_v <= 1e-5);
  CHECK(traj.reflection_mismatch <= 1e-8);
}

TEST_CASE("rk4 trajectory matches the oscillatory ivp solution") {
  const EquationParams p{4.0, 2.0};
  TrigPoly g(FrequencyBasis{{2.0}});
  g.add_term({Rational(1)}, 1.0, 0.0);
  const Case2Solution sol = case2_ivp(p, g, 1.0, 0.5);

  const IvpResult traj = integrate_system(p, g, 1.0, 0.5, 10.0, 1e-3);
  double worst = 0.0;
  for (std::size_t j = 0; j < traj.forward.size(); ++j)
    worst = std::max(worst,
                     std::abs(traj.forward[j] - sol.eval(traj.forward.node(j))));
  CHECK(worst <= 1e-5);
}

TEST_CASE("rk4 trajectory tracks the hyperbolic worked example") {
  // Bounded solution -cos t / 3; matching initial data keeps the
  // exponential modes silent over a T = 10 window.
  const EquationParams p{-3.0, 1.0};
  const TrigPoly g = poly1({{1, 1.0, 0.0}});
  const IvpResult traj =
      integrate_system(p, g, -1.0 / 3.0, 0.0, 10.0, 1e-3);
  double worst = 0.0;
  for (std::size_t j = 0; j < traj.forward.size(); ++j)
    worst = std::max(worst,
                     std::abs(traj.forward[j] + std::cos(traj.forward.node(j)) / 3.0));
  CHECK(worst <= 1e-6);

  CHECK_THROWS_AS(integrate_system(p, g, std::nan(""), 0.0, 10.0, 1e-3),
                  InvalidParams);
  CHECK_THROWS_AS(integrate_system(p, g, 0.0, 0.0, 1.0, 0.3), InvalidGrid);
}

TEST_CASE("zero forcing from rest stays identically zero") {
  const TrigPoly zero(FrequencyBasis{{1.0}});
  const IvpResult traj =
      integrate_system({-3.0, 1.0}, zero, 0.0, 0.0, 5.0, 1e-2);
  CHECK(max_abs(traj.forward) == 0.0);
  CHECK(max_abs(traj.backward) == 0.0);
  CHECK(traj.reflection_mismatch == 0.0);
}

TEST_CASE("bound report flags the small-alpha amplification probe") {
  // alpha = 0.1, beta = 1; forcing sin t/20 sits deep in the odd channel:
  // divisor (a - b) - lambda^2 = -0.0125, amplitude 80.
  const EquationParams p{-0.505, -0.495};
  TrigPoly g(FrequencyBasis{{0.05}});
  g.add_term({Rational(1)}, 0.0, 1.0);
  const TrigPoly x = bounded_solution(p, g);
  CHECK(x.coeff_l1() == doctest::Approx(80.0));

  const BoundReport r = bound_report(p, g, x);
  CHECK(r.apriori_constant == doctest::Approx(21.0));
  CHECK(r.kernel_constant == doctest::Approx(101.0));
  CHECK(r.ratio >= 79.0);
  CHECK(r.ratio <= 81.0);
  CHECK(r.kernel_holds);
  CHECK_FALSE(r.apriori_holds);
}

TEST_CASE("bound report is conservative for modest solutions") {
  const EquationParams p{-3.0, 1.0};
  const TrigPoly g = poly1({{1, 1.0, 0.0}});
  // True solution -cos t / 3: ratio 1/3 sits under both constants
  // (kernel 3/4, apriori 2).
  const BoundReport r = bound_report(p, g, bounded_solution(p, g));
  CHECK(r.kernel_holds);
  CHECK(r.apriori_holds);
  CHECK(r.ratio == doctest::Approx(1.0 / 3.0).epsilon(0.01));

  // Zero solution short-circuits to ratio 0 even for zero forcing.
  const TrigPoly zero(FrequencyBasis{{1.0}});
  const BoundReport z = bound_report(p, zero, zero);
  CHECK(z.ratio == 0.0);
  CHECK(z.kernel_holds);
  CHECK(z.apriori_holds);

  CHECK_THROWS_AS(bound_report({4.0, 2.0}, g, g), UnsupportedCase);
  CHECK_THROWS_AS(bound_report(p, TrigPoly(FrequencyBasis{{1.0}}), g),
                  InvalidParams);
}

TEST_CASE("finding digests and formatting") {
  CHECK(forcing_digest(TrigPoly(FrequencyBasis{{1.0}})) == "0");
  CHECK(forcing_digest(poly1({{1, 0.5, 0.0}})) == "0.5,0@1");

  TrigPoly two(FrequencyBasis{{1.0, std::sqrt(2.0)}});
  two.add_term({Rational(1), Rational(0)}, 0.25, -1.0);
  two.add_term({Rational(0), Rational(1)}, 0.0, 3.0);
  CHECK(forcing_digest(two) == "0,3@0,1;0.25,-1@1,0");

  TrigPoly frac(FrequencyBasis{{2.0}});
  frac.add_term({Rational(1, 2)}, 1.0, 0.0);
  CHECK(forcing_digest(frac) == "1,0@1/2");

  const Finding f{-3.0, 1.0, "0.5,0@1", "kernel_bound", 101.0, 80.5, true};
  CHECK(format_finding(f) ==
        "a=-3 b=1 forcing=0.5,0@1 constant=kernel_bound:101 ratio=80.5 "
        "verdict=holds");
  const Finding v{-3.0, 1.0, "0.5,0@1", "apriori_bound", 21.0, 80.5, false};
  CHECK(format_finding(v) ==
        "a=-3 b=1 forcing=0.5,0@1 constant=apriori_bound:21 ratio=80.5 "
        "verdict=violated");
}
