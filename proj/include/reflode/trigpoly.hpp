#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "reflode/rational.hpp"

namespace reflode {

// Declared rationally independent generators, each finite and > 0.  All
// frequencies in a polynomial are exact rational combinations of these, so
// independence makes the trigonometric representation unique.
class FrequencyBasis {
public:
  explicit FrequencyBasis(std::vector<double> generators);
  std::size_t size() const { return generators_.size(); }
  const std::vector<double>& generators() const { return generators_; }
  bool operator==(const FrequencyBasis&) const = default;

private:
  std::vector<double> generators_;
};

// Exact coordinate vector of a frequency in a basis.  Stored in canonical
// sign: the first nonzero coordinate is positive (cos is even, sin odd, so
// each +/- pair of coordinate vectors names one term).  Note the canonical
// representative may have a negative real value, e.g. coordinates (1, -1)
// over {1, sqrt 2} name 1 - sqrt 2 < 0; evaluation handles that, nothing
// else needs the sign of the value.
class Frequency {
public:
  explicit Frequency(std::vector<Rational> coords);
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  double value(const FrequencyBasis& basis) const;
  bool operator<(const Frequency& o) const { return coords_ < o.coords_; }
  bool operator==(const Frequency& o) const { return coords_ == o.coords_; }

  // -1, 0, +1 for the first nonzero entry (0 only for the zero vector).
  static int leading_sign(const std::vector<Rational>& coords);

private:
  std::vector<Rational> coords_;
};

// One term A cos(lambda t) + B sin(lambda t).
struct TrigCoeff {
  double cos_c = 0.0;
  double sin_c = 0.0;
  bool operator==(const TrigCoeff&) const = default;
};

// Flattened term view for numeric loops: value plus both coefficients.
struct Harmonic {
  double lambda;
  double cos_c;
  double sin_c;
};

enum class ModuleRelation { Equal, PSubsetOfQ, QSubsetOfP, Incomparable };

// Finite trigonometric polynomial sum of A cos(lambda t) + B sin(lambda t)
// over frequencies in one basis.  Terms are keyed by exact coordinates; no
// term with cos_c == sin_c == 0 is stored, and the zero frequency never
// carries a sine part.
class TrigPoly {
public:
  explicit TrigPoly(FrequencyBasis basis) : basis_(std::move(basis)) {}

  // Folds coords to the canonical-sign representative (flipping the sine
  // coefficient when the sign flips) and accumulates into existing terms.
  void add_term(std::vector<Rational> coords, double cos_c, double sin_c);

  const FrequencyBasis& basis() const { return basis_; }
  const std::map<Frequency, TrigCoeff>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::vector<Harmonic> harmonics() const;

  double eval(double t) const;
  double eval_derivative(double t) const;

  TrigPoly reflected() const;                          // t -> -t
  std::pair<TrigPoly, TrigPoly> parity_split() const;  // (even, odd)
  TrigPoly derivative(unsigned order = 1) const;
  // Term-wise antiderivative; every frequency must satisfy
  // |value| >= zero_margin or FrequencyNearZero is thrown.
  TrigPoly antiderivative(double zero_margin = 1e-9) const;

  // Sum of per-term amplitudes sqrt(A^2 + B^2); an upper bound on sup |p|.
  double coeff_l1() const;

  // (grid lower bound, coefficient-sum upper bound) for sup |p|.
  // The grid stride is a golden-section fraction of the fastest period so
  // samples do not alias onto zeros of the polynomial.
  std::pair<double, double> sup_norm_bounds(int grid_points = 4096) const;

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(double s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(double s, TrigPoly p) { return p *= s; }
  friend TrigPoly operator*(TrigPoly p, double s) { return p *= s; }
  // Product-to-sum expansion; exact coordinate arithmetic keeps combined
  // frequencies collapsible.
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

  // Exact structural equality (same basis, same terms, same coefficients).
  bool operator==(const TrigPoly&) const = default;

private:
  void require_same_basis(const TrigPoly& o) const;

  FrequencyBasis basis_;
  std::map<Frequency, TrigCoeff> terms_;
};

// Largest coefficient difference between p and q, term-aligned; the metric
// behind "solutions agree" checks.
double max_coeff_diff(const TrigPoly& p, const TrigPoly& q);

// Compares the Z-modules generated by the two frequency sets (exact lattice
// computation on scaled integer coordinates).
ModuleRelation module_compare(const TrigPoly& p, const TrigPoly& q);

}  // namespace reflode
