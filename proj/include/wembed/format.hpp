#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "wembed/errors.hpp"

namespace wembed {

// Shortest decimal text that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Scientific notation with 17 significant digits; round-trip exact and
// locale-independent.
inline std::string format_double_full(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ParseError("invalid number: '" + std::string(text) + "'");
  return v;
}

}  // namespace wembed
