#pragma once

#include <cstdio>
#include <string>

namespace shellrecon {

/// 17 significant digits with '.' as separator; enough for a bit-exact round trip.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace shellrecon
