#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "memdyn/dynamics.hpp"
#include "memdyn/geometry.hpp"

namespace memdyn::cli {

struct RegionOverlay {
  std::string id;     // element id, e.g. "region-p1"
  std::string color;
  ConvexPolygon polygon;
};

struct PlotOverlay {
  std::vector<RegionOverlay> regions;
  std::optional<Point2> limit;
  std::string limit_label;
};

// Indices of at most max_points trajectory points: every point of a dense
// prefix, then geometrically spaced ones, always ending at n - 1.
std::vector<std::size_t> decimate(std::size_t n, std::size_t max_points);

// Fixed-precision output, so equal inputs give byte-identical documents.
std::string render_svg(const Trajectory& traj, const ConvexPolygon& polytope, const PlotOverlay& overlay,
                       int size = 640);

}  // namespace memdyn::cli
