#pragma once

#include <string>

#include "memdyn/geometry.hpp"

namespace memdyn {

// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

// "x1,x2" with format_number on each coordinate.
std::string format_point(Point2 p);

}  // namespace memdyn
