#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace alphamag::detail {

// Shortest representation that round-trips; `inf` for +infinity.
inline void append_real(std::string& out, double v) {
  if (std::isinf(v)) {
    out += v > 0 ? "inf" : "-inf";
    return;
  }
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

inline std::string real_to_string(double v) {
  std::string s;
  append_real(s, v);
  return s;
}

}  // namespace alphamag::detail
