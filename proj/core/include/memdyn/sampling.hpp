#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "memdyn/geometry.hpp"

namespace memdyn {

using Rng = std::mt19937_64;

// Uniform point of a non-degenerate polygon by rejection from its bounding box.
Point2 sample_uniform(const ConvexPolygon& poly, Rng& rng);

std::vector<Point2> sample_uniform(const ConvexPolygon& poly, std::size_t n, std::uint64_t seed);

// Up to n points of `domain` satisfying `accept`; gives up after
// max_tries draws and returns what it has.
std::vector<Point2> sample_where(const ConvexPolygon& domain,
                                 const std::function<bool(Point2)>& accept, std::size_t n,
                                 std::uint64_t seed, std::size_t max_tries = 0);

}  // namespace memdyn
