#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reflode/picard.hpp"
#include "reflode/spectral.hpp"
#include "reflode/trigpoly.hpp"

namespace reflode {

enum class SolveMode { Spectral, Grid, Picard };

struct NonlinearitySpec {
  std::vector<Monomial> monomials;
  double radius = 1.0;
  bool operator==(const NonlinearitySpec&) const = default;
};

struct SolverSettings {
  SolveMode mode = SolveMode::Spectral;
  double halfwidth = 40.0;
  double step = 0.005;
  double tol = 1e-9;
  int max_iter = 100;
  double resonance_tol = 1e-9;
  bool operator==(const SolverSettings&) const = default;
};

struct IvpSpec {
  double x0 = 0.0;
  double xdot0 = 0.0;
  bool operator==(const IvpSpec&) const = default;
};

struct ProblemSpec {
  EquationParams params;
  FrequencyBasis basis;
  TrigPoly forcing;
  std::optional<NonlinearitySpec> nonlinearity;
  SolverSettings solver;
  std::optional<IvpSpec> ivp;
  bool operator==(const ProblemSpec&) const = default;
};

// Sectioned key = value format; see README for the grammar.  Unknown
// sections or keys are rejected.  ParseError carries line/column for
// grammar violations; SemanticError names the violated constraint for a
// well-formed file describing an invalid problem.
ProblemSpec parse_problem(const std::string& text);

// Canonical text form; parse_problem(emit_problem(s)) == s.
std::string emit_problem(const ProblemSpec& spec);

const char* mode_name(SolveMode m);

}  // namespace reflode
