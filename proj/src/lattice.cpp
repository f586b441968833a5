#include "reflode/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

#include "reflode/errors.hpp"

namespace reflode {

namespace {

// Floor quotient for p > 0; cpp_int division truncates toward zero.
Int floordiv(const Int& a, const Int& p) {
  Int q = a / p;
  if (a % p != 0 && a < 0) --q;
  return q;
}

void subtract_scaled(std::vector<Int>& target, const std::vector<Int>& src,
                     const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < target.size(); ++i) target[i] -= q * src[i];
}

bool is_zero_row(const std::vector<Int>& r) {
  return std::all_of(r.begin(), r.end(), [](const Int& v) { return v == 0; });
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows) {
  std::erase_if(rows, is_zero_row);
  if (rows.empty()) return rows;
  const std::size_t m = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m) throw InvalidParams("hermite_normal_form: ragged rows");

  std::size_t top = 0;
  for (std::size_t col = 0; col < m && top < rows.size(); ++col) {
    // Euclidean elimination below `top`: repeatedly swap the smallest
    // nonzero entry up and reduce the others by truncated quotients until
    // at most one nonzero entry remains in this column.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))
          best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool leftover = false;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        subtract_scaled(rows[r], rows[top], rows[r][col] / rows[top][col]);
        if (rows[r][col] != 0) leftover = true;
      }
      if (!leftover) break;
    }
    if (rows[top][col] == 0) continue;  // no pivot in this column
    if (rows[top][col] < 0)
      for (auto& v : rows[top]) v = -v;
    for (std::size_t r = 0; r < top; ++r)
      subtract_scaled(rows[r], rows[top], floordiv(rows[r][col], rows[top][col]));
    ++top;
  }
  // Every remaining row was reduced to zero in all columns.
  rows.resize(top);
  return rows;
}

bool lattice_contained(const IntMatrix& sub, const IntMatrix& super) {
  IntMatrix joint = super;
  joint.insert(joint.end(), sub.begin(), sub.end());
  return hermite_normal_form(std::move(joint)) == hermite_normal_form(super);
}

}  // namespace reflode
