#pragma once

#include <string>
#include <vector>

#include "reflode/problem.hpp"
#include "reflode/verify.hpp"

namespace reflode {

struct RunOptions {
  // Relative tail level for the truncated kernel quadrature (grid and
  // picard backends); a command-line knob, not a problem-file key.
  double tail_cut = 1e-7;
};

// Everything a solve produces.  text and csv are byte-deterministic for a
// given spec; findings record bound checks whose verdict deserves a
// durable trace (violated or structurally noteworthy).
struct SolveReport {
  std::string text;
  std::string csv;
  std::vector<Finding> findings;
};

// classify -> solve -> verify with at least one independent oracle; the
// oracle agreement figure always appears in the report text.  Solver and
// oracle failures propagate as the library's error types.
SolveReport run(const ProblemSpec& spec, const RunOptions& opts = {});

// Process exit code for a failure: 2 resonance / singular system,
// 3 non-contractive / radius / iteration budget, 4 unsupported regime,
// 5 parse or semantic rejection, 6 oracle mismatch, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace reflode
