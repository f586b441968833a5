#include "reflode/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "reflode/errors.hpp"
#include "reflode/lattice.hpp"

namespace reflode {

namespace {

// Negation and scaling can produce -0.0; store +0.0 so emitted coefficient
// text is independent of how a value was computed.
double clean(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

FrequencyBasis::FrequencyBasis(std::vector<double> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty())
    throw InvalidParams("frequency basis: at least one generator required");
  for (double g : generators_)
    if (!std::isfinite(g) || g <= 0.0)
      throw InvalidParams("frequency basis: generators must be finite and positive");
  std::vector<double> sorted = generators_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidParams("frequency basis: duplicate generator");
}

Frequency::Frequency(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (leading_sign(coords_) < 0)
    throw InvalidParams("frequency: coordinates not in canonical sign");
}

int Frequency::leading_sign(const std::vector<Rational>& coords) {
  for (const auto& c : coords) {
    if (c != 0) return c > 0 ? 1 : -1;
  }
  return 0;
}

bool Frequency::is_zero() const { return leading_sign(coords_) == 0; }

double Frequency::value(const FrequencyBasis& basis) const {
  double v = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    v += to_double(coords_[i]) * basis.generators()[i];
  return v;
}

void TrigPoly::add_term(std::vector<Rational> coords, double cos_c, double sin_c) {
  if (coords.size() != basis_.size())
    throw BasisMismatch("add_term: coordinate count does not match basis size");
  if (!std::isfinite(cos_c) || !std::isfinite(sin_c))
    throw InvalidParams("add_term: coefficients must be finite");
  const int sign = Frequency::leading_sign(coords);
  if (sign < 0) {
    for (auto& c : coords) c = -c;
    sin_c = -sin_c;  // sin is odd, cos is even
  }
  if (sign == 0) sin_c = 0.0;  // sin(0*t) contributes nothing
  auto [it, inserted] = terms_.try_emplace(Frequency{std::move(coords)});
  it->second.cos_c += cos_c;
  it->second.sin_c += sin_c;
  if (it->second.cos_c == 0.0 && it->second.sin_c == 0.0) terms_.erase(it);
}

std::vector<Harmonic> TrigPoly::harmonics() const {
  std::vector<Harmonic> h;
  h.reserve(terms_.size());
  for (const auto& [f, c] : terms_)
    h.push_back({f.value(basis_), c.cos_c, c.sin_c});
  return h;
}

double TrigPoly::eval(double t) const {
  double v = 0.0;
  for (const auto& [f, c] : terms_) {
    const double lt = f.value(basis_) * t;
    v += c.cos_c * std::cos(lt) + c.sin_c * std::sin(lt);
  }
  return v;
}

double TrigPoly::eval_derivative(double t) const {
  double v = 0.0;
  for (const auto& [f, c] : terms_) {
    const double lam = f.value(basis_);
    v += lam * (c.sin_c * std::cos(lam * t) - c.cos_c * std::sin(lam * t));
  }
  return v;
}

TrigPoly TrigPoly::reflected() const {
  TrigPoly r(basis_);
  for (const auto& [f, c] : terms_)
    r.terms_.emplace(f, TrigCoeff{c.cos_c, clean(-c.sin_c)});
  return r;
}

std::pair<TrigPoly, TrigPoly> TrigPoly::parity_split() const {
  TrigPoly even(basis_), odd(basis_);
  for (const auto& [f, c] : terms_) {
    if (c.cos_c != 0.0) even.terms_.emplace(f, TrigCoeff{c.cos_c, 0.0});
    if (c.sin_c != 0.0) odd.terms_.emplace(f, TrigCoeff{0.0, c.sin_c});
  }
  return {even, odd};
}

TrigPoly TrigPoly::derivative(unsigned order) const {
  if (order == 0) return *this;
  TrigPoly d(basis_);
  for (const auto& [f, c] : terms_) {
    if (f.is_zero()) continue;  // constant term differentiates away
    const double lam = f.value(basis_);
    double A = c.cos_c, B = c.sin_c;
    for (unsigned k = 0; k < order; ++k) {
      const double nA = lam * B;
      const double nB = -lam * A;
      A = nA;
      B = nB;
    }
    if (A != 0.0 || B != 0.0) d.terms_.emplace(f, TrigCoeff{clean(A), clean(B)});
  }
  return d;
}

TrigPoly TrigPoly::antiderivative(double zero_margin) const {
  if (!(zero_margin > 0.0))
    throw InvalidParams("antiderivative: zero_margin must be positive");
  TrigPoly s(basis_);
  for (const auto& [f, c] : terms_) {
    const double lam = f.value(basis_);
    if (std::abs(lam) < zero_margin)
      throw FrequencyNearZero("antiderivative: frequency too close to zero", lam);
    s.terms_.emplace(f, TrigCoeff{clean(-c.sin_c / lam), c.cos_c / lam});
  }
  return s;
}

double TrigPoly::coeff_l1() const {
  double s = 0.0;
  for (const auto& [f, c] : terms_) s += std::hypot(c.cos_c, c.sin_c);
  return s;
}

std::pair<double, double> TrigPoly::sup_norm_bounds(int grid_points) const {
  if (grid_points <= 0)
    throw InvalidParams("sup_norm_bounds: grid_points must be positive");
  if (terms_.empty()) return {0.0, 0.0};
  const double upper = coeff_l1();
  double lam_max = 0.0;
  for (const auto& [f, c] : terms_)
    lam_max = std::max(lam_max, std::abs(f.value(basis_)));
  // Pure constant: any single sample is already sharp.
  const double stride =
      lam_max > 0.0 ? (2.0 * M_PI / lam_max) * 0.061803398874989484 : 1.0;
  double lower = 0.0;
  for (int j = 0; j < grid_points; ++j) {
    const double t = (double(j) - double(grid_points - 1) / 2.0) * stride;
    lower = std::max(lower, std::abs(eval(t)));
  }
  return {lower, upper};
}

void TrigPoly::require_same_basis(const TrigPoly& o) const {
  if (!(basis_ == o.basis_))
    throw BasisMismatch("operands built over different frequency bases");
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  require_same_basis(o);
  for (const auto& [f, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(f);
    it->second.cos_c += c.cos_c;
    it->second.sin_c += c.sin_c;
    if (it->second.cos_c == 0.0 && it->second.sin_c == 0.0) terms_.erase(it);
  }
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  require_same_basis(o);
  for (const auto& [f, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(f);
    it->second.cos_c -= c.cos_c;
    it->second.sin_c -= c.sin_c;
    if (it->second.cos_c == 0.0 && it->second.sin_c == 0.0) terms_.erase(it);
  }
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  if (!std::isfinite(s)) throw InvalidParams("scale factor must be finite");
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [f, c] : terms_) {
    c.cos_c = clean(c.cos_c * s);
    c.sin_c = clean(c.sin_c * s);
  }
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  a.require_same_basis(b);
  TrigPoly prod(a.basis_);
  const std::size_t n = a.basis_.size();
  for (const auto& [f1, c1] : a.terms_) {
    for (const auto& [f2, c2] : b.terms_) {
      std::vector<Rational> sum(n), diff(n);
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] = f1.coords()[i] + f2.coords()[i];
        diff[i] = f1.coords()[i] - f2.coords()[i];
      }
      // cos(u)cos(v) etc. expanded to terms at u+v and u-v.
      prod.add_term(std::move(sum),
                    0.5 * (c1.cos_c * c2.cos_c - c1.sin_c * c2.sin_c),
                    0.5 * (c1.cos_c * c2.sin_c + c1.sin_c * c2.cos_c));
      prod.add_term(std::move(diff),
                    0.5 * (c1.cos_c * c2.cos_c + c1.sin_c * c2.sin_c),
                    0.5 * (c1.sin_c * c2.cos_c - c1.cos_c * c2.sin_c));
    }
  }
  return prod;
}

double max_coeff_diff(const TrigPoly& p, const TrigPoly& q) {
  const TrigPoly d = p - q;
  double m = 0.0;
  for (const auto& [f, c] : d.terms())
    m = std::max({m, std::abs(c.cos_c), std::abs(c.sin_c)});
  return m;
}

ModuleRelation module_compare(const TrigPoly& p, const TrigPoly& q) {
  if (!(p.basis() == q.basis()))
    throw BasisMismatch("module_compare: different frequency bases");
  auto gather = [](const TrigPoly& t) {
    std::vector<std::vector<Rational>> v;
    for (const auto& [f, c] : t.terms())
      if (!f.is_zero()) v.push_back(f.coords());
    return v;
  };
  const auto P = gather(p);
  const auto Q = gather(q);
  Int scale = 1;
  for (const auto* set : {&P, &Q})
    for (const auto& vec : *set)
      for (const auto& r : vec)
        scale = lcm(scale, Int(boost::multiprecision::denominator(r)));
  auto to_int = [&scale](const std::vector<std::vector<Rational>>& set) {
    IntMatrix m;
    for (const auto& vec : set) {
      std::vector<Int> row;
      row.reserve(vec.size());
      for (const auto& r : vec)
        row.push_back(Int(boost::multiprecision::numerator(r)) *
                      (scale / Int(boost::multiprecision::denominator(r))));
      m.push_back(std::move(row));
    }
    return m;
  };
  const IntMatrix ip = to_int(P);
  const IntMatrix iq = to_int(Q);
  const bool p_in_q = lattice_contained(ip, iq);
  const bool q_in_p = lattice_contained(iq, ip);
  if (p_in_q && q_in_p) return ModuleRelation::Equal;
  if (p_in_q) return ModuleRelation::PSubsetOfQ;
  if (q_in_p) return ModuleRelation::QSubsetOfP;
  return ModuleRelation::Incomparable;
}

}  // namespace reflode
