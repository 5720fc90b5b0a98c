#include "memdyn/format.hpp"

#include <array>
#include <charconv>

namespace memdyn {

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

std::string format_point(Point2 p) { return format_number(p.x1) + "," + format_number(p.x2); }

}  // namespace memdyn
