#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace dmec {

// Shortest round-trip-safe text used by every emitted table; infinities are
// written as `inf` / `-inf`.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dmec
