#pragma once

#include <cstdio>
#include <string>

namespace reflode {

// Shortest round-trip-safe decimal form; the one float format used in all
// text output so reruns diff clean.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace reflode
