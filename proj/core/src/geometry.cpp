#include "memdyn/geometry.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "memdyn/error.hpp"

namespace memdyn {

std::ostream& operator<<(std::ostream& os, Point2 p) {
  return os << '(' << p.x1 << ", " << p.x2 << ')';
}

Line Line::from_coefficients(double p, double q, double r) {
  const double n = std::hypot(p, q);
  if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(r)) {
    throw Error(ErrorKind::DegenerateInput, "line normal must be a finite nonzero vector");
  }
  p /= n;
  q /= n;
  r /= n;
  if (q < 0.0 || (q == 0.0 && p < 0.0)) {
    p = -p;
    q = -q;
    r = -r;
  }
  // Avoid signed zeros so that equal lines compare equal.
  return Line(p + 0.0, q + 0.0, r + 0.0);
}

Line line_through(Point2 a, Point2 b) {
  const Point2 d = b - a;
  if (norm(d) <= kEta) {
    throw Error(ErrorKind::DegenerateInput, "line_through needs two distinct points");
  }
  const double n = norm(d);
  double p = -d.x2 / n;
  double q = d.x1 / n;
  if (q < 0.0 || (q == 0.0 && p < 0.0)) {
    p = -p;
    q = -q;
  }
  // Anchor r at the midpoint so both endpoints see symmetric rounding.
  const Point2 m = 0.5 * (a + b);
  return Line::from_coefficients(p, q, p * m.x1 + q * m.x2);
}

std::optional<Point2> intersect_lines(const Line& l1, const Line& l2) {
  const double det = l1.p() * l2.q() - l2.p() * l1.q();
  if (std::abs(det) <= kEta) {
    return std::nullopt;
  }
  return Point2{(l1.r() * l2.q() - l2.r() * l1.q()) / det,
                (l1.p() * l2.r() - l2.p() * l1.r()) / det};
}

HalfPlane offset_halfplane(const HalfPlane& h, double eps) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "offset must be nonnegative");
  }
  const double delta = h.side() == Side::Under ? eps : -eps;
  return {h.line().shifted(delta), h.side()};
}

Proximal distance_to(const HalfPlane& h, Point2 x) {
  const double e = h.excess(x);
  if (e <= 0.0) {
    return {0.0, x};
  }
  return {e, x - e * h.outward_normal()};
}

namespace {

// Orientation of c relative to the directed segment a->b, normalized by |b - a|.
double edge_side(Point2 a, Point2 b, Point2 c) {
  const Point2 d = b - a;
  return cross(d, c - a) / norm(d);
}

}  // namespace

Shape ConvexPolygon::shape() const {
  switch (vertices_.size()) {
    case 0: return Shape::Empty;
    case 1: return Shape::Point;
    case 2: return Shape::Segment;
    default: return Shape::Polygon;
  }
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) { return distance(a, b) <= kEta; }),
            pts.end());
  if (pts.size() <= 1) {
    return ConvexPolygon(std::move(pts));
  }

  // Andrew's monotone chain; near-collinear turns are dropped.
  auto turn = [](Point2 o, Point2 a, Point2 b) {
    const Point2 u = a - o;
    const Point2 v = b - o;
    return cross(u, v) / std::max(1.0, norm(u) * norm(v));
  };
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= kEta) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2& p = pts[i];
    while (k >= lower && turn(hull[k - 2], hull[k - 1], p) <= kEta) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && distance(hull[0], hull[1]) <= kEta) {
    hull.resize(1);
  }
  return ConvexPolygon(std::move(hull));
}

bool ConvexPolygon::contains(Point2 x, double tol) const {
  switch (shape()) {
    case Shape::Empty: return false;
    case Shape::Point: return distance(vertices_[0], x) <= tol;
    case Shape::Segment: return distance_to_segment(vertices_[0], vertices_[1], x).distance <= tol;
    case Shape::Polygon: break;
  }
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (edge_side(vertices_[i], vertices_[(i + 1) % n], x) < -tol) {
      return false;
    }
  }
  return true;
}

ConvexPolygon ConvexPolygon::clipped(const HalfPlane& h) const {
  if (empty()) {
    return {};
  }
  std::vector<Point2> out;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    const double ea = h.excess(a);
    const double eb = h.excess(b);
    const bool in_a = ea <= kEta;
    const bool in_b = eb <= kEta;
    if (in_a) {
      out.push_back(a);
    }
    if (in_a != in_b && std::abs(ea - eb) > 0.0) {
      const double t = ea / (ea - eb);
      out.push_back(a + t * (b - a));
    }
  }
  return convex_hull(out);
}

ConvexPolygon ConvexPolygon::clipped(std::span<const HalfPlane> hs) const {
  ConvexPolygon result = *this;
  for (const HalfPlane& h : hs) {
    result = result.clipped(h);
  }
  return result;
}

double ConvexPolygon::max_step_fraction(Point2 from, Point2 to) const {
  switch (shape()) {
    case Shape::Empty: return 0.0;
    case Shape::Point: return distance(from, to) <= kEta ? 1.0 : 0.0;
    case Shape::Segment: {
      if (contains(to)) return 1.0;
      const Point2 a = vertices_[0];
      const Point2 b = vertices_[1];
      if (std::abs(edge_side(a, b, to)) > kEta) return 0.0;
      // Collinear: walk until the far endpoint.
      const Point2 d = to - from;
      double best = 0.0;
      for (Point2 end : {a, b}) {
        const double len2 = dot(d, d);
        if (len2 > 0.0) best = std::max(best, std::clamp(dot(end - from, d) / len2, 0.0, 1.0));
      }
      return best;
    }
    case Shape::Polygon: break;
  }
  double lambda = 1.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    const double g0 = std::max(0.0, edge_side(a, b, from));
    const double g1 = edge_side(a, b, to);
    if (g1 < -kEta) {
      lambda = std::min(lambda, g0 / (g0 - g1));
    }
  }
  return lambda;
}

double ConvexPolygon::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      best = std::max(best, distance(vertices_[i], vertices_[j]));
    }
  }
  return best;
}

double ConvexPolygon::area() const {
  double twice = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; n >= 3 && i < n; ++i) {
    twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  }
  return 0.5 * twice;
}

std::pair<Point2, Point2> ConvexPolygon::bounding_box() const {
  if (empty()) {
    throw Error(ErrorKind::InvalidParameter, "bounding box of an empty polygon");
  }
  Point2 lo = vertices_[0];
  Point2 hi = vertices_[0];
  for (const Point2& v : vertices_) {
    lo = {std::min(lo.x1, v.x1), std::min(lo.x2, v.x2)};
    hi = {std::max(hi.x1, v.x1), std::max(hi.x2, v.x2)};
  }
  return {lo, hi};
}

Proximal distance_to_segment(Point2 a, Point2 b, Point2 x) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(x - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  // Snap to the endpoints exactly so vertex proximal points are returned verbatim.
  const Point2 foot = t == 0.0 ? a : (t == 1.0 ? b : a + t * d);
  return {distance(foot, x), foot};
}

Proximal distance_to(const ConvexPolygon& set, Point2 x) {
  const auto vs = set.vertices();
  switch (set.shape()) {
    case Shape::Empty:
      throw Error(ErrorKind::InvalidParameter, "distance to an empty set");
    case Shape::Point:
      return {distance(vs[0], x), vs[0]};
    case Shape::Segment:
      return distance_to_segment(vs[0], vs[1], x);
    case Shape::Polygon:
      break;
  }
  if (set.contains(x, 0.0)) {
    return {0.0, x};
  }
  Proximal best{std::numeric_limits<double>::infinity(), x};
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Proximal c = distance_to_segment(vs[i], vs[(i + 1) % vs.size()], x);
    if (c.distance < best.distance) {
      best = c;
    }
  }
  return best;
}

bool eps_contains(const ConvexPolygon& set, double eps, Point2 x) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "eps must be nonnegative");
  }
  return distance_to(set, x).distance <= eps + kEta;
}

bool eps_contains(const HalfPlane& h, double eps, Point2 x) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "eps must be nonnegative");
  }
  return distance_to(h, x).distance <= eps + kEta;
}

}  // namespace memdyn
