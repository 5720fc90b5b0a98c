#include "memdyn/game.hpp"

#include <algorithm>
#include <cmath>

#include "lp.hpp"
#include "memdyn/error.hpp"

namespace memdyn {

Game::Game(std::vector<std::string> actions1, std::vector<std::string> actions2,
           std::vector<Point2> payoffs)
    : actions1_(std::move(actions1)), actions2_(std::move(actions2)), payoffs_(std::move(payoffs)) {
  if (actions1_.empty() || actions2_.empty()) {
    throw Error(ErrorKind::InvalidParameter, "each player needs at least one action");
  }
  if (payoffs_.size() != actions1_.size() * actions2_.size()) {
    throw Error(ErrorKind::InvalidParameter, "payoff table is not total over the action pairs");
  }
  for (const Point2& p : payoffs_) {
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
      throw Error(ErrorKind::InvalidParameter, "payoffs must be finite");
    }
  }
}

Game Game::transposed() const {
  std::vector<Point2> t;
  t.reserve(payoffs_.size());
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::size_t i = 0; i < rows(); ++i) t.push_back(swapped(payoff(i, j)));
  }
  return Game(actions2_, actions1_, std::move(t));
}

void CorrelatedStrategy::validate(const Game& g) const {
  if (weights.size() != g.payoffs().size()) {
    throw Error(ErrorKind::InvalidParameter, "correlated strategy needs one weight per action pair");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidParameter, "correlated weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kEta * static_cast<double>(weights.size())) {
    throw Error(ErrorKind::InvalidParameter, "correlated weights must sum to 1");
  }
}

Point2 CorrelatedStrategy::expected_payoff(const Game& g) const {
  validate(g);
  Point2 u;
  for (std::size_t k = 0; k < weights.size(); ++k) u = u + weights[k] * g.payoffs()[k];
  return u;
}

CorrelatedStrategy CorrelatedStrategy::pure(const Game& g, std::size_t i, std::size_t j) {
  if (i >= g.rows() || j >= g.cols()) throw Error(ErrorKind::InvalidParameter, "action index out of range");
  CorrelatedStrategy c{std::vector<double>(g.payoffs().size(), 0.0)};
  c.weights[i * g.cols() + j] = 1.0;
  return c;
}

Game make_pd() {
  return Game({"C", "D"}, {"C", "D"},
              {kMutualCooperation, kSucker, kTemptation, kMutualDefection});
}

const ConvexPolygon& pd_polytope() {
  static const ConvexPolygon poly = payoff_polytope(make_pd());
  return poly;
}

ConvexPolygon payoff_polytope(const Game& g) { return convex_hull(g.payoffs()); }

namespace {

// Player 1's payoff matrix against player 2's columns.
double lower_value(const std::vector<std::vector<double>>& a) {
  return a.front().size() <= 2 ? detail::lower_value_two_columns(a) : detail::lower_value_lp(a);
}

}  // namespace

MinmaxValues minmax_values(const Game& g) {
  std::vector<std::vector<double>> a1(g.rows(), std::vector<double>(g.cols()));
  std::vector<std::vector<double>> a2(g.cols(), std::vector<double>(g.rows()));
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      a1[i][j] = g.payoff(i, j).x1;
      a2[j][i] = g.payoff(i, j).x2;
    }
  }
  return {lower_value(a1), lower_value(a2)};
}

namespace {

bool nonnegative_direction(Point2 n) {
  const double tol = kEta * norm(n);
  return n.x1 >= -tol && n.x2 >= -tol;
}

// w lies in the cone swept counter-clockwise from n_in to n_out (angle < pi).
bool in_cone(Point2 n_in, Point2 n_out, Point2 w) {
  return cross(n_in, w) >= 0.0 && cross(w, n_out) >= 0.0;
}

}  // namespace

std::vector<Segment> weak_pareto_frontier(const Game& g) {
  const ConvexPolygon poly = payoff_polytope(g);
  const auto vs = poly.vertices();
  std::vector<Segment> out;
  switch (poly.shape()) {
    case Shape::Empty:
      return out;
    case Shape::Point:
      out.push_back({vs[0], vs[0]});
      return out;
    case Shape::Segment: {
      // Hull vertices are lexicographically ordered, so d.x1 >= 0.
      const Point2 d = vs[1] - vs[0];
      if (d.x1 > kEta && d.x2 > kEta) {
        out.push_back({vs[1], vs[1]});
      } else {
        out.push_back({vs[0], vs[1]});
      }
      return out;
    }
    case Shape::Polygon:
      break;
  }

  const std::size_t n = vs.size();
  auto outward = [&](std::size_t i) {
    const Point2 d = vs[(i + 1) % n] - vs[i];
    return Point2{d.x2, -d.x1};
  };
  std::vector<bool> edge_ok(n);
  for (std::size_t i = 0; i < n; ++i) edge_ok[i] = nonnegative_direction(outward(i));

  for (std::size_t i = 0; i < n; ++i) {
    if (edge_ok[i]) {
      out.push_back({vs[i], vs[(i + 1) % n]});
      continue;
    }
    // Vertex i sits between edge i-1 and edge i.
    const std::size_t prev = (i + n - 1) % n;
    if (!edge_ok[prev]) {
      const Point2 n_in = outward(prev);
      const Point2 n_out = outward(i);
      if (in_cone(n_in, n_out, {1.0, 0.0}) || in_cone(n_in, n_out, {0.0, 1.0})) {
        out.push_back({vs[i], vs[i]});
      }
    }
  }
  for (Segment& s : out) {
    if (s.b.x1 < s.a.x1 || (s.b.x1 == s.a.x1 && s.b.x2 > s.a.x2)) std::swap(s.a, s.b);
  }
  std::sort(out.begin(), out.end(), [](const Segment& l, const Segment& r) {
    return l.a.x1 < r.a.x1 || (l.a.x1 == r.a.x1 && l.a.x2 > r.a.x2);
  });
  return out;
}

double BetaCoreImage::length() const {
  double total = 0.0;
  for (const Segment& s : segments) total += distance(s.a, s.b);
  return total;
}

bool BetaCoreImage::contains(Point2 x, double tol) const {
  return std::any_of(segments.begin(), segments.end(), [&](const Segment& s) {
    return distance_to_segment(s.a, s.b, x).distance <= tol;
  });
}

bool BetaCoreImage::is_excluded(Point2 x, double tol) const {
  return std::any_of(excluded_endpoints.begin(), excluded_endpoints.end(),
                     [&](Point2 e) { return distance(e, x) <= tol; });
}

namespace {

// Clip segment a->b to {x_k >= bound} in parameter space, keeping the binding
// coordinate exactly equal to the bound.
bool clip_lower(Segment& s, double bound, bool first_coord) {
  auto coord = [first_coord](Point2 p) { return first_coord ? p.x1 : p.x2; };
  auto set = [first_coord](Point2& p, double v) { (first_coord ? p.x1 : p.x2) = v; };
  const double ca = coord(s.a);
  const double cb = coord(s.b);
  const bool in_a = ca >= bound - kEta;
  const bool in_b = cb >= bound - kEta;
  if (!in_a && !in_b) return false;
  if (in_a && in_b) return true;
  const double t = (bound - ca) / (cb - ca);
  Point2 cut = s.a + t * (s.b - s.a);
  set(cut, bound);
  (in_a ? s.b : s.a) = cut;
  return true;
}

}  // namespace

BetaCoreImage beta_core_image(const Game& g) {
  const MinmaxValues mm = minmax_values(g);
  BetaCoreImage core;
  for (Segment s : weak_pareto_frontier(g)) {
    if (clip_lower(s, mm.v1, true) && clip_lower(s, mm.v2, false)) {
      core.segments.push_back(s);
    }
  }
  for (const Segment& s : core.segments) {
    for (Point2 e : {s.a, s.b}) {
      const bool on_box = std::abs(e.x1 - mm.v1) <= kEta || std::abs(e.x2 - mm.v2) <= kEta;
      if (on_box && !core.is_excluded(e, kEta)) core.excluded_endpoints.push_back(e);
    }
  }
  return core;
}

Point2 betacore_param(const BetaCoreImage& core, double s) {
  if (core.empty()) {
    throw Error(ErrorKind::Unsupported, "beta-core image is empty");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "parameter must lie in [0, 1]");
  }
  if (core.is_excluded(core.segments.front().a, kEta)) s = std::max(s, kParamClamp);
  if (core.is_excluded(core.segments.back().b, kEta)) s = std::min(s, 1.0 - kParamClamp);

  const double total = core.length();
  if (total <= 0.0) return core.segments.front().a;
  const double target = s * total;
  double walked = 0.0;
  for (const Segment& seg : core.segments) {
    const double len = distance(seg.a, seg.b);
    if (target <= walked + len) {
      const double t = len > 0.0 ? (target - walked) / len : 0.0;
      if (t <= 0.0) return seg.a;
      if (t >= 1.0) return seg.b;
      return seg.a + t * (seg.b - seg.a);
    }
    walked += len;
  }
  return core.segments.back().b;
}

Point2 betacore_param(const Game& g, double s) { return betacore_param(beta_core_image(g), s); }

}  // namespace memdyn
