#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "memdyn/error.hpp"

namespace memdyn::cli {
namespace {

constexpr double kLo = -0.25;
constexpr double kHi = 3.25;
constexpr double kMargin = 24.0;

struct Frame {
  double scale;
  double size;

  double px(Point2 p) const { return kMargin + (p.x1 - kLo) * scale; }
  double py(Point2 p) const { return size - kMargin - (p.x2 - kLo) * scale; }
};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // "-0.00" and "0.00" must print the same.
  return std::string(buf) == "-0.00" ? "0.00" : buf;
}

std::string point_list(const Frame& f, std::span<const Point2> pts) {
  std::string s;
  for (const Point2& p : pts) {
    if (!s.empty()) s += ' ';
    s += fixed(f.px(p)) + ',' + fixed(f.py(p));
  }
  return s;
}

}  // namespace

std::vector<std::size_t> decimate(std::size_t n, std::size_t max_points) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  if (n <= max_points || max_points < 8) {
    idx.resize(n);
    for (std::size_t k = 0; k < n; ++k) idx[k] = k;
    return idx;
  }
  const std::size_t prefix = max_points / 4;
  for (std::size_t k = 0; k < prefix; ++k) idx.push_back(k);
  const std::size_t m = max_points - prefix;
  const double ratio = std::pow(static_cast<double>(n - 1) / static_cast<double>(prefix), 1.0 / static_cast<double>(m));
  double pos = static_cast<double>(prefix);
  for (std::size_t k = 0; k < m; ++k) {
    pos *= ratio;
    const auto i = std::min(n - 1, static_cast<std::size_t>(std::llround(pos)));
    if (i > idx.back()) idx.push_back(i);
  }
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

std::string render_svg(const Trajectory& traj, const ConvexPolygon& polytope, const PlotOverlay& overlay,
                       int size) {
  if (traj.size() == 0) throw Error(ErrorKind::InsufficientData, "empty trajectory");
  if (size < 100) throw Error(ErrorKind::InvalidParameter, "plot size must be at least 100");
  const double s = static_cast<double>(size);
  const Frame f{(s - 2 * kMargin) / (kHi - kLo), s};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "<g id=\"axes\" stroke=\"#999\" stroke-width=\"0.5\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (int k = 0; k <= 3; ++k) {
    const double v = k;
    os << "<line x1=\"" << fixed(f.px({v, kLo})) << "\" y1=\"" << fixed(f.py({v, kLo})) << "\" x2=\""
       << fixed(f.px({v, kHi})) << "\" y2=\"" << fixed(f.py({v, kHi})) << "\"/>\n";
    os << "<line x1=\"" << fixed(f.px({kLo, v})) << "\" y1=\"" << fixed(f.py({kLo, v})) << "\" x2=\""
       << fixed(f.px({kHi, v})) << "\" y2=\"" << fixed(f.py({kHi, v})) << "\"/>\n";
    os << "<text x=\"" << fixed(f.px({v, kLo}) + 2) << "\" y=\"" << fixed(f.py({v, kLo}) - 2)
       << "\" stroke=\"none\" fill=\"#666\">" << k << "</text>\n";
    if (k > 0) {
      os << "<text x=\"" << fixed(f.px({kLo, v}) + 2) << "\" y=\"" << fixed(f.py({kLo, v}) - 2)
         << "\" stroke=\"none\" fill=\"#666\">" << k << "</text>\n";
    }
  }
  os << "</g>\n";

  os << "<polygon id=\"polytope\" points=\"" << point_list(f, polytope.vertices())
     << "\" fill=\"#f2f2f2\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (const RegionOverlay& r : overlay.regions) {
    if (r.polygon.empty()) continue;
    os << "<polygon id=\"" << r.id << "\" points=\"" << point_list(f, r.polygon.vertices())
       << "\" fill=\"" << r.color << "\" fill-opacity=\"0.08\" stroke=\"" << r.color
       << "\" stroke-width=\"1.2\" stroke-dasharray=\"6 3\"/>\n";
  }

  std::vector<Point2> pts;
  for (std::size_t i : decimate(traj.size(), 4000)) pts.push_back(traj.points[i]);
  os << "<polyline id=\"trajectory\" points=\"" << point_list(f, pts)
     << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"0.8\"/>\n";

  const Point2 first = traj.points.front();
  const Point2 last = traj.back();
  os << "<circle id=\"start\" cx=\"" << fixed(f.px(first)) << "\" cy=\"" << fixed(f.py(first))
     << "\" r=\"3\" fill=\"#2ca02c\"/>\n";
  os << "<circle id=\"end\" cx=\"" << fixed(f.px(last)) << "\" cy=\"" << fixed(f.py(last))
     << "\" r=\"3\" fill=\"#333\"/>\n";

  if (overlay.limit) {
    const double x = f.px(*overlay.limit);
    const double y = f.py(*overlay.limit);
    os << "<g id=\"limit\" stroke=\"#ff7f0e\" stroke-width=\"2\">\n";
    os << "<line x1=\"" << fixed(x - 6) << "\" y1=\"" << fixed(y - 6) << "\" x2=\"" << fixed(x + 6)
       << "\" y2=\"" << fixed(y + 6) << "\"/>\n";
    os << "<line x1=\"" << fixed(x - 6) << "\" y1=\"" << fixed(y + 6) << "\" x2=\"" << fixed(x + 6)
       << "\" y2=\"" << fixed(y - 6) << "\"/>\n";
    os << "<text x=\"" << fixed(x + 8) << "\" y=\"" << fixed(y - 8)
       << "\" stroke=\"none\" fill=\"#ff7f0e\" font-family=\"sans-serif\" font-size=\"11\">"
       << overlay.limit_label << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace memdyn::cli
