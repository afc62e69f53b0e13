#pragma once

#include <array>
#include <charconv>
#include <string>

namespace transurf::detail {

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_shortest(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace transurf::detail
