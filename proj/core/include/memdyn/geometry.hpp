#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace memdyn {

// Tolerance on normalized geometric quantities (unit normals, signed distances).
inline constexpr double kEta = 1e-12;

/// A point of the payoff plane: x1 is player 1's payoff, x2 is player 2's.
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x1, s * a.x2}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x1 / s, a.x2 / s}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

std::ostream& operator<<(std::ostream& os, Point2 p);

constexpr double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
constexpr double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Mirror image under the player swap (x1, x2) -> (x2, x1).
constexpr Point2 swapped(Point2 p) { return {p.x2, p.x1}; }

/// The line p*x1 + q*x2 = r with (p, q) a unit vector.
///
/// Orientation is canonical: q > 0, or q == 0 and p > 0. With that convention
/// the "under" side {p*x1 + q*x2 <= r} is below a non-vertical line and left
/// of a vertical one.
class Line {
 public:
  static Line from_coefficients(double p, double q, double r);

  double p() const { return p_; }
  double q() const { return q_; }
  double r() const { return r_; }

  // Signed distance; positive on the "over" side.
  double evaluate(Point2 x) const { return p_ * x.x1 + q_ * x.x2 - r_; }
  bool contains(Point2 x, double tol = kEta) const { return std::abs(evaluate(x)) <= tol; }
  Point2 normal() const { return {p_, q_}; }
  Point2 direction() const { return {q_, -p_}; }
  Point2 project(Point2 x) const { return x - evaluate(x) * normal(); }
  bool is_vertical() const { return q_ == 0.0; }
  Line shifted(double delta) const { return Line(p_, q_, r_ + delta); }

 private:
  Line(double p, double q, double r) : p_(p), q_(q), r_(r) {}

  double p_;
  double q_;
  double r_;
};

Line line_through(Point2 a, Point2 b);

// Intersection point, or nullopt when the normals are parallel to within kEta.
std::optional<Point2> intersect_lines(const Line& l1, const Line& l2);

enum class Side { Over, Under };

class HalfPlane {
 public:
  HalfPlane(Line line, Side side) : line_(line), side_(side) {}

  static HalfPlane over(Line line) { return {line, Side::Over}; }
  static HalfPlane under(Line line) { return {line, Side::Under}; }

  const Line& line() const { return line_; }
  Side side() const { return side_; }

  // Signed distance from the boundary, positive outside the half-plane.
  double excess(Point2 x) const {
    const double v = line_.evaluate(x);
    return side_ == Side::Under ? v : -v;
  }
  bool contains(Point2 x, double tol = kEta) const { return excess(x) <= tol; }
  Point2 outward_normal() const {
    return side_ == Side::Under ? line_.normal() : -1.0 * line_.normal();
  }

 private:
  Line line_;
  Side side_;
};

HalfPlane offset_halfplane(const HalfPlane& h, double eps);

struct Proximal {
  double distance = 0.0;
  Point2 point;
};

enum class Shape { Empty, Point, Segment, Polygon };

/// Convex polygon with counter-clockwise vertices. Points and segments are
/// valid, flagged shapes; an empty polygon results from clipping away
/// everything.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  std::span<const Point2> vertices() const { return vertices_; }
  Shape shape() const;
  bool empty() const { return vertices_.empty(); }
  bool is_degenerate() const { return vertices_.size() == 1 || vertices_.size() == 2; }

  bool contains(Point2 x, double tol = kEta) const;
  ConvexPolygon clipped(const HalfPlane& h) const;
  ConvexPolygon clipped(std::span<const HalfPlane> hs) const;

  // Largest lambda in [0, 1] with from + lambda*(to - from) inside; assumes
  // `from` is inside.
  double max_step_fraction(Point2 from, Point2 to) const;

  double diameter() const;
  double area() const;
  std::pair<Point2, Point2> bounding_box() const;

  friend ConvexPolygon convex_hull(std::span<const Point2> points);

 private:
  explicit ConvexPolygon(std::vector<Point2> ccw) : vertices_(std::move(ccw)) {}

  std::vector<Point2> vertices_;
};

ConvexPolygon convex_hull(std::span<const Point2> points);
inline ConvexPolygon convex_hull(std::initializer_list<Point2> points) {
  return convex_hull(std::span<const Point2>(points.begin(), points.size()));
}

Proximal distance_to_segment(Point2 a, Point2 b, Point2 x);
Proximal distance_to(const ConvexPolygon& set, Point2 x);
Proximal distance_to(const HalfPlane& h, Point2 x);

// Closed Euclidean eps-neighborhood membership: dist(x, set) <= eps + kEta.
bool eps_contains(const ConvexPolygon& set, double eps, Point2 x);
bool eps_contains(const HalfPlane& h, double eps, Point2 x);

}  // namespace memdyn
