#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "reflode/errors.hpp"
#include "reflode/lattice.hpp"
#include "reflode/trigpoly.hpp"

using namespace reflode;

namespace {

// Independent oracle: evaluate a raw (lambda, A, B) term list by direct
// summation, no canonicalization, no shared code with TrigPoly.
struct RawTerm {
  double lambda, cos_c, sin_c;
};

double raw_eval(const std::vector<RawTerm>& terms, double t) {
  double v = 0.0;
  for (const auto& m : terms)
    v += m.cos_c * std::cos(m.lambda * t) + m.sin_c * std::sin(m.lambda * t);
  return v;
}

const double kSqrt2 = std::sqrt(2.0);

FrequencyBasis basis1() { return FrequencyBasis{{1.0}}; }
FrequencyBasis basis2() { return FrequencyBasis{{1.0, kSqrt2}}; }

TrigPoly poly2(std::vector<std::tuple<int, int, double, double>> terms) {
  TrigPoly p(basis2());
  for (auto& [c1, c2, A, B] : terms)
    p.add_term({Rational(c1), Rational(c2)}, A, B);
  return p;
}

}  // namespace

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(FrequencyBasis(std::vector<double>{}), InvalidParams);
  CHECK_THROWS_AS(FrequencyBasis(std::vector<double>{0.0}), InvalidParams);
  CHECK_THROWS_AS(FrequencyBasis(std::vector<double>{-1.0}), InvalidParams);
  CHECK_THROWS_AS(FrequencyBasis(std::vector<double>{1.0, 1.0}), InvalidParams);
  CHECK(FrequencyBasis(std::vector<double>{2.0, 1.0}).size() == 2);
}

TEST_CASE("canonical sign folding") {
  TrigPoly p(basis2());
  p.add_term({Rational(-1), Rational(1)}, 4.0, 6.0);
  REQUIRE(p.terms().size() == 1);
  const auto& [f, c] = *p.terms().begin();
  CHECK(f.coords() == std::vector<Rational>{Rational(1), Rational(-1)});
  CHECK(c.cos_c == 4.0);
  CHECK(c.sin_c == -6.0);
  // The canonical representative has value 1 - sqrt(2) < 0; evaluation must
  // still match the raw term 4 cos((sqrt2 - 1) t) + 6 sin((sqrt2 - 1) t).
  const std::vector<RawTerm> raw{{kSqrt2 - 1.0, 4.0, 6.0}};
  for (double t : {-7.3, -1.0, 0.0, 0.4, 2.0, 11.7})
    CHECK(p.eval(t) == doctest::Approx(raw_eval(raw, t)).epsilon(1e-14));
}

TEST_CASE("accumulation and pruning") {
  TrigPoly p(basis1());
  p.add_term({Rational(1)}, 2.0, 3.0);
  p.add_term({Rational(1)}, -2.0, -3.0);
  CHECK(p.empty());
  p.add_term({Rational(0)}, 1.0, 5.0);  // sin(0 t) dropped
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->second.cos_c == 1.0);
  CHECK(p.terms().begin()->second.sin_c == 0.0);
  CHECK_THROWS_AS(p.add_term({Rational(1), Rational(1)}, 1.0, 0.0),
                  BasisMismatch);
}

TEST_CASE("evaluation against raw summation") {
  TrigPoly p = poly2({{0, 0, 3.0, 0.0},
                      {1, 0, 2.0, 7.0},
                      {0, 1, 0.0, -5.0},
                      {2, 1, -1.5, 0.25}});
  const std::vector<RawTerm> raw{{0.0, 3.0, 0.0},
                                 {1.0, 2.0, 7.0},
                                 {kSqrt2, 0.0, -5.0},
                                 {2.0 + kSqrt2, -1.5, 0.25}};
  for (double t = -9.0; t <= 9.0; t += 0.613)
    CHECK(p.eval(t) == doctest::Approx(raw_eval(raw, t)).epsilon(1e-13));
}

TEST_CASE("reflection and parity split") {
  TrigPoly p = poly2({{0, 0, 3.0, 0.0}, {1, 0, 2.0, 7.0}, {0, 1, 0.0, -5.0}});
  const TrigPoly r = p.reflected();
  for (double t : {-4.2, -0.5, 0.0, 1.3, 8.8})
    CHECK(r.eval(t) == doctest::Approx(p.eval(-t)).epsilon(1e-14));

  auto [even, odd] = p.parity_split();
  CHECK(even + odd == p);
  CHECK(even.reflected() == even);
  CHECK(odd.reflected() == -1.0 * odd);
  CHECK(even.terms().size() == 2);  // constant and 2 cos t
  CHECK(odd.terms().size() == 2);   // 7 sin t and -5 sin sqrt2 t
}

TEST_CASE("derivative matches difference quotient") {
  TrigPoly p = poly2({{1, 0, 2.0, 7.0}, {0, 1, 0.0, -5.0}, {0, 0, 4.0, 0.0}});
  const TrigPoly d = p.derivative();
  const double h = 1e-5;
  for (double t : {-3.0, 0.0, 0.7, 5.1}) {
    const double quotient = (p.eval(t + h) - p.eval(t - h)) / (2.0 * h);
    CHECK(d.eval(t) == doctest::Approx(quotient).epsilon(1e-8));
    CHECK(p.eval_derivative(t) == doctest::Approx(d.eval(t)).epsilon(1e-14));
  }
  CHECK(p.derivative(2) == d.derivative());
  CHECK(p.derivative(0) == p);
  // cos 2t -> -2 sin 2t exactly
  TrigPoly c2(basis1());
  c2.add_term({Rational(2)}, 1.0, 0.0);
  const TrigPoly dc2 = c2.derivative();
  REQUIRE(dc2.terms().size() == 1);
  CHECK(dc2.terms().begin()->second.cos_c == 0.0);
  CHECK(dc2.terms().begin()->second.sin_c == -2.0);
}

TEST_CASE("antiderivative inverts derivative") {
  TrigPoly p = poly2({{1, 0, 2.0, 7.0}, {0, 1, 0.0, -5.0}, {3, -2, 1.0, 0.5}});
  const TrigPoly back = p.antiderivative().derivative();
  CHECK(max_coeff_diff(back, p) < 1e-14);

  TrigPoly with_const = poly2({{0, 0, 1.0, 0.0}, {1, 0, 1.0, 0.0}});
  CHECK_THROWS_AS(with_const.antiderivative(), FrequencyNearZero);
  // 3 - 2 sqrt2 ~ 0.17: below a deliberately large margin
  TrigPoly near = poly2({{3, -2, 1.0, 0.0}});
  CHECK_THROWS_AS(near.antiderivative(0.2), FrequencyNearZero);
  try {
    near.antiderivative(0.2);
  } catch (const FrequencyNearZero& e) {
    CHECK(e.lambda == doctest::Approx(3.0 - 2.0 * kSqrt2).epsilon(1e-12));
  }
}

TEST_CASE("product expands to known spectrum") {
  // (cos t + sin sqrt2 t)^2 = 1 + cos(2t)/2 - cos(2 sqrt2 t)/2
  //                           + sin((sqrt2+1) t) + sin((sqrt2-1) t)
  TrigPoly p = poly2({{1, 0, 1.0, 0.0}, {0, 1, 0.0, 1.0}});
  const TrigPoly sq = p * p;
  TrigPoly expected = poly2({{0, 0, 1.0, 0.0},
                             {2, 0, 0.5, 0.0},
                             {0, 2, -0.5, 0.0},
                             {1, 1, 0.0, 1.0},
                             {1, -1, 0.0, -1.0}});
  REQUIRE(sq.terms().size() == 5);
  CHECK(max_coeff_diff(sq, expected) < 1e-15);
  for (double t : {-2.2, 0.0, 0.9, 3.7}) {
    const double v = p.eval(t);
    CHECK(sq.eval(t) == doctest::Approx(v * v).epsilon(1e-13));
  }
}

TEST_CASE("sup norm bounds") {
  TrigPoly c2(basis1());
  c2.add_term({Rational(2)}, 1.0, 0.0);
  auto [lo, up] = c2.sup_norm_bounds();
  CHECK(up == 1.0);
  CHECK(lo >= 0.999);
  CHECK(lo <= up);

  TrigPoly constant(basis1());
  constant.add_term({Rational(0)}, -3.0, 0.0);
  auto [clo, cup] = constant.sup_norm_bounds();
  CHECK(clo == 3.0);
  CHECK(cup == 3.0);

  TrigPoly two = poly2({{1, 0, 1.0, 0.0}, {0, 1, 0.0, 1.0}});
  auto [tlo, tup] = two.sup_norm_bounds();
  CHECK(tup == doctest::Approx(2.0));
  CHECK(tlo >= 1.99);
  CHECK(tlo <= tup);

  TrigPoly empty(basis1());
  CHECK(empty.sup_norm_bounds() == std::pair{0.0, 0.0});
}

TEST_CASE("hermite normal form") {
  auto M = [](std::vector<std::vector<long>> in) {
    IntMatrix m;
    for (auto& r : in) {
      std::vector<Int> row(r.begin(), r.end());
      m.push_back(row);
    }
    return m;
  };
  CHECK(hermite_normal_form(M({{4}, {6}})) == M({{2}}));
  CHECK(hermite_normal_form(M({{-3}})) == M({{3}}));
  CHECK(hermite_normal_form(M({{0, 0}})) == IntMatrix{});
  CHECK(hermite_normal_form(M({{2, 4}, {0, 0}})) == M({{2, 4}}));
  CHECK(hermite_normal_form(M({{5, 7}, {0, 3}})) == M({{5, 1}, {0, 3}}));
  CHECK(hermite_normal_form(M({{1, 1}, {1, -1}})) ==
        hermite_normal_form(M({{1, 1}, {2, 0}})));
  CHECK(lattice_contained(M({{2}}), M({{1}})));
  CHECK_FALSE(lattice_contained(M({{1}}), M({{2}})));
  CHECK(lattice_contained({}, M({{3}})));
  CHECK_FALSE(lattice_contained(M({{3}}), {}));
}

TEST_CASE("module comparison") {
  auto single = [](std::vector<Rational> coords) {
    TrigPoly p(basis2());
    p.add_term(std::move(coords), 1.0, 0.0);
    return p;
  };
  const TrigPoly p11 = single({Rational(1), Rational(0)}) +
                       single({Rational(0), Rational(1)});
  const TrigPoly q11 = single({Rational(1), Rational(0)}) +
                       single({Rational(0), Rational(1)});
  CHECK(module_compare(p11, q11) == ModuleRelation::Equal);

  // {t+sqrt2 t, t-sqrt2 t} and {t+sqrt2 t, 2t} generate the same module
  const TrigPoly pm = single({Rational(1), Rational(1)}) +
                      single({Rational(1), Rational(-1)});
  const TrigPoly qm = single({Rational(1), Rational(1)}) +
                      single({Rational(2), Rational(0)});
  CHECK(module_compare(pm, qm) == ModuleRelation::Equal);

  // doubled frequency generates a strict submodule
  CHECK(module_compare(single({Rational(2), Rational(0)}),
                       single({Rational(1), Rational(0)})) ==
        ModuleRelation::PSubsetOfQ);
  CHECK(module_compare(single({Rational(1), Rational(0)}),
                       single({Rational(2), Rational(0)})) ==
        ModuleRelation::QSubsetOfP);
  // halves: coords 1/2 generate a supermodule of coords 1
  CHECK(module_compare(single({Rational(1), Rational(0)}),
                       single({Rational(1, 2), Rational(0)})) ==
        ModuleRelation::PSubsetOfQ);
  CHECK(module_compare(single({Rational(1), Rational(0)}),
                       single({Rational(0), Rational(1)})) ==
        ModuleRelation::Incomparable);

  // constants generate the trivial module
  TrigPoly konst(basis2());
  konst.add_term({Rational(0), Rational(0)}, 2.0, 0.0);
  TrigPoly none(basis2());
  CHECK(module_compare(konst, none) == ModuleRelation::Equal);
  CHECK(module_compare(konst, q11) == ModuleRelation::PSubsetOfQ);

  TrigPoly other_basis(FrequencyBasis{{3.0}});
  CHECK_THROWS_AS(module_compare(q11, other_basis), BasisMismatch);
}

TEST_CASE("arithmetic operators") {
  TrigPoly p = poly2({{1, 0, 2.0, 7.0}});
  TrigPoly q = poly2({{1, 0, -2.0, 1.0}, {0, 1, 1.0, 0.0}});
  const TrigPoly s = p + q;
  for (double t : {-1.0, 0.3, 4.4})
    CHECK(s.eval(t) == doctest::Approx(p.eval(t) + q.eval(t)).epsilon(1e-14));
  CHECK((s - q) == p);
  const TrigPoly scaled = 2.5 * p;
  CHECK(scaled.terms().begin()->second.cos_c == 5.0);
  CHECK((0.0 * p).empty());
  TrigPoly other(basis1());
  other.add_term({Rational(1)}, 1.0, 0.0);
  CHECK_THROWS_AS(p + other, BasisMismatch);
  CHECK_THROWS_AS(p * other, BasisMismatch);
}
