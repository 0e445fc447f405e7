#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace recordlab {

/// Fixed 15-significant-digit rendering used by every emitter.
inline std::string fmt_num(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// The double nearest to the 15-digit rendering; JSON writers emit the
/// shortest round-trip form, so this yields 15-digit output there too.
inline double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::strtod(fmt_num(x).c_str(), nullptr);
}

inline constexpr const char* kVersion = "1.0.0";

}  // namespace recordlab
