#pragma once

#include <charconv>
#include <string>

namespace epigauge {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
inline std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace epigauge
