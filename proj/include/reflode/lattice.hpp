#pragma once

#include <vector>

#include "reflode/rational.hpp"

namespace reflode {

using IntMatrix = std::vector<std::vector<Int>>;

// Canonical row Hermite normal form: pivots positive, entries above each
// pivot reduced into [0, pivot), zero rows dropped.  Two generating sets
// span the same integer lattice iff their forms are identical.
IntMatrix hermite_normal_form(IntMatrix rows);

// True iff the lattice generated by `sub` is contained in the one
// generated by `super`.
bool lattice_contained(const IntMatrix& sub, const IntMatrix& super);

}  // namespace reflode
