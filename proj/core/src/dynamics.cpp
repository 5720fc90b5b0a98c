#include "memdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "memdyn/error.hpp"
#include "memdyn/format.hpp"

namespace memdyn {

Policy::Policy(MemoryStrategy s) : memory_(std::move(s)) {}

Policy::Policy(std::string name, Script script) : name_(std::move(name)), script_(std::move(script)) {
  if (!script_) throw Error(ErrorKind::InvalidParameter, "scripted policy needs a callable");
}

Action Policy::act(std::int64_t t, Point2 x) const {
  if (memory_) return (*memory_)(x);
  return script_(t, x);
}

std::string Policy::describe() const { return memory_ ? memory_->describe() : name_; }

Profile::Profile(Policy p1, Policy p2) : Profile(std::move(p1), std::move(p2), make_pd()) {}

Profile::Profile(Policy p1, Policy p2, const Game& game)
    : p1_(std::move(p1)), p2_(std::move(p2)), polytope_(payoff_polytope(game)) {
  if (game.rows() != 2 || game.cols() != 2) {
    throw Error(ErrorKind::Unsupported, "memory strategies choose between two actions per player");
  }
  for (std::size_t i = 0; i < 4; ++i) table_[i] = game.payoffs()[i];
  for (const Policy* p : {&p1_, &p2_}) {
    const MemoryStrategy* m = p->memory();
    if (m && m->player() != (p == &p1_ ? Player::One : Player::Two)) {
      throw Error(ErrorKind::InvalidParameter, "strategy " + m->describe() + " is built for the other player");
    }
  }
}

namespace {

void require_inside(const ConvexPolygon& domain, Point2 x) {
  if (!std::isfinite(x.x1) || !std::isfinite(x.x2) || !domain.contains(x, kEta)) {
    throw Error(ErrorKind::OutOfDomain, "point " + format_point(x) + " is outside the payoff polytope");
  }
}

// Round indices stay exact in a double up to 2^53.
constexpr std::int64_t kMaxRounds = std::int64_t{1} << 52;

void require_rounds(std::int64_t t0, std::int64_t T) {
  if (t0 < 1) throw Error(ErrorKind::InvalidParameter, "t0 must be at least 1");
  if (T < t0) throw Error(ErrorKind::InvalidParameter, "T must not precede t0");
  if (T > kMaxRounds) throw Error(ErrorKind::InvalidParameter, "T exceeds the supported horizon");
}

// Running sums S_t = t * xbar_t as unevaluated double-double pairs, so that
// xbar_t is within an ulp or so of the exact average however long the run.
struct Averager {
  struct Sum {
    double hi;
    double lo;

    void add(double v) {
      // Knuth's two-sum.
      const double s = hi + v;
      const double bp = s - hi;
      const double err = (hi - (s - bp)) + (v - bp);
      lo += err;
      hi = s + lo;
      lo -= hi - s;
    }
    double over(double t) const { return hi / t + lo / t; }
  };

  Sum s1;
  Sum s2;
  double t;

  Averager(Point2 x0, std::int64_t t0) : t(static_cast<double>(t0)) {
    const double p1 = x0.x1 * t;
    const double p2 = x0.x2 * t;
    s1 = {p1, std::fma(x0.x1, t, -p1)};
    s2 = {p2, std::fma(x0.x2, t, -p2)};
  }

  Point2 advance(Point2 f) {
    s1.add(f.x1);
    s2.add(f.x2);
    t += 1.0;
    return {s1.over(t), s2.over(t)};
  }
};

std::int64_t round_count(std::int64_t t0, std::int64_t T) { return T - t0 + 1; }

}  // namespace

Point2 step_map(const Profile& profile, Point2 x, std::int64_t t) {
  require_inside(profile.polytope(), x);
  return profile.payoff(t, x);
}

Point2 beta_step(std::int64_t t, Point2 x, Point2 fx) {
  if (t < 1) throw Error(ErrorKind::InvalidParameter, "t must be at least 1");
  const long double n = static_cast<long double>(t);
  return {static_cast<double>((n * x.x1 + fx.x1) / (n + 1)),
          static_cast<double>((n * x.x2 + fx.x2) / (n + 1))};
}

Point2 beta_step(std::int64_t t, Point2 x, const Profile& profile) {
  return beta_step(t, x, step_map(profile, x, t));
}

Trajectory simulate(const Profile& profile, Point2 x0, std::int64_t t0, std::int64_t T) {
  require_rounds(t0, T);
  require_inside(profile.polytope(), x0);
  const auto n = static_cast<std::size_t>(round_count(t0, T));
  Trajectory traj;
  traj.t0 = t0;
  traj.points.reserve(n);
  traj.actions.reserve(n);
  traj.payoffs.reserve(n);

  Averager avg(x0, t0);
  Point2 x = x0;
  for (std::int64_t t = t0;; ++t) {
    const auto a = profile.actions(t, x);
    const Point2 f = profile.payoff(a);
    traj.points.push_back(x);
    traj.actions.push_back(a);
    traj.payoffs.push_back(f);
    if (t == T) break;
    x = avg.advance(f);
  }
  return traj;
}

Trajectory simulate_map(const std::function<Point2(std::int64_t, Point2)>& f,
                        const ConvexPolygon& domain, Point2 x0, std::int64_t t0,
                        std::int64_t T) {
  require_rounds(t0, T);
  require_inside(domain, x0);
  const auto n = static_cast<std::size_t>(round_count(t0, T));
  Trajectory traj;
  traj.t0 = t0;
  traj.points.reserve(n);
  traj.actions.assign(n, {Action::C, Action::C});
  traj.payoffs.reserve(n);

  Averager avg(x0, t0);
  Point2 x = x0;
  for (std::int64_t t = t0;; ++t) {
    const Point2 fx = f(t, x);
    traj.points.push_back(x);
    traj.payoffs.push_back(fx);
    if (t == T) break;
    x = avg.advance(fx);
  }
  return traj;
}

std::size_t tail_begin(std::size_t n, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "tail fraction must lie in (0, 1]");
  }
  const auto len = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  return n - std::clamp<std::size_t>(len, 1, n);
}

double point_spread(std::span<const Point2> pts) {
  if (pts.empty()) return 0.0;
  return convex_hull(pts).diameter();
}

RunSummary run(const Profile& profile, Point2 x0, std::int64_t t0, std::int64_t T,
               double tail_fraction) {
  require_rounds(t0, T);
  require_inside(profile.polytope(), x0);
  const auto n = static_cast<std::size_t>(round_count(t0, T));
  const std::int64_t tail_t = t0 + static_cast<std::int64_t>(tail_begin(n, tail_fraction));

  RunSummary out;
  out.x0 = x0;
  out.steps = T - t0;
  std::vector<Point2> tail;
  tail.reserve(static_cast<std::size_t>(T - tail_t + 1));

  Averager avg(x0, t0);
  Point2 x = x0;
  for (std::int64_t t = t0;; ++t) {
    if (t >= tail_t) tail.push_back(x);
    if (t == T) break;
    const auto a = profile.actions(t, x);
    ++out.action_counts[2 * static_cast<int>(a[0]) + static_cast<int>(a[1])];
    x = avg.advance(profile.payoff(a));
  }
  out.final = x;
  out.tail.t_begin = tail_t;
  out.tail.t_end = T;
  out.tail.min = out.tail.max = tail.front();
  for (const Point2& p : tail) {
    out.tail.min = {std::min(out.tail.min.x1, p.x1), std::min(out.tail.min.x2, p.x2)};
    out.tail.max = {std::max(out.tail.max.x1, p.x1), std::max(out.tail.max.x2, p.x2)};
  }
  out.tail.spread = point_spread(tail);
  return out;
}

LimitEstimate estimate_limit(const Trajectory& traj, double tail_fraction, double tol) {
  if (traj.size() < 100) {
    throw Error(ErrorKind::InsufficientData, "limit estimation needs at least 100 points");
  }
  const std::size_t begin = tail_begin(traj.size(), tail_fraction);
  const double spread =
      point_spread(std::span<const Point2>(traj.points).subspan(begin));
  return {traj.back(), spread, spread <= tol};
}

std::string_view to_string(LimitCase c) {
  switch (c) {
    case LimitCase::SameA: return "same_a";
    case LimitCase::CCPoint: return "cc_point";
    case LimitCase::BWins: return "b_wins";
    case LimitCase::AWins: return "a_wins";
    case LimitCase::YPoint: return "y_point";
  }
  return "unknown";
}

namespace {

const BetaCoreImage& pd_core() {
  static const BetaCoreImage core = beta_core_image(make_pd());
  return core;
}

void require_anchor(Point2 v, const char* name) {
  if (pd_core().is_excluded(v)) {
    throw Error(ErrorKind::InvalidParameter,
                std::string(name) + " = " + format_point(v) + " is an excluded beta-core endpoint");
  }
  if (!pd_core().contains(v)) {
    throw Error(ErrorKind::InvalidParameter,
                std::string(name) + " = " + format_point(v) + " is not on the beta-core image");
  }
}

void require_offset(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::InvalidParameter, "eps must be a nonnegative finite number");
  }
}

// Outer boundary lines of (T_1(a))^eps1 and (T_2(b))^eps2.
Line outer_line_1(Point2 a, double eps1) {
  return offset_halfplane(HalfPlane::under(line_through(kMutualDefection, a)), eps1).line();
}
Line outer_line_2(Point2 b, double eps2) {
  return offset_halfplane(HalfPlane::over(line_through(kMutualDefection, b)), eps2).line();
}

void require_y_case(Point2 a, Point2 b) {
  if (!(b.x1 < a.x1)) throw Error(ErrorKind::InvalidParameter, "the y point needs b1 < a1");
  if (std::abs(a.x1 - 1.0) <= kEta || std::abs(b.x1 - 1.0) <= kEta) {
    throw Error(ErrorKind::InvalidParameter, "anchors need v1 != 1");
  }
}

}  // namespace

Point2 y_point(Point2 a, Point2 b, double eps1, double eps2) {
  require_y_case(a, b);
  require_offset(eps1);
  require_offset(eps2);
  const auto y = intersect_lines(outer_line_1(a, eps1), outer_line_2(b, eps2));
  if (!y) throw Error(ErrorKind::DegenerateAngle, "cooperation boundaries are parallel");
  return *y;
}

Point2 y_limit(Point2 a, Point2 b, double eps1, double eps2) {
  require_y_case(a, b);
  require_offset(eps1);
  require_offset(eps2);
  const Line la = outer_line_1(a, eps1);
  const Line lb = outer_line_2(b, eps2);
  // Top edge of K_1: x2 = min(la(x1), a2). Right edge of K_2: x1 = min(lb^-1(x2), b1).
  auto top = [&](double x1) { return std::min((la.r() - la.p() * x1) / la.q(), a.x2); };
  auto right = [&](double x2) { return std::min((lb.r() - lb.q() * x2) / lb.p(), b.x1); };
  const Line cap1 = Line::from_coefficients(0.0, 1.0, a.x2);
  const Line cap2 = Line::from_coefficients(1.0, 0.0, b.x1);
  constexpr double tol = 1e-9;
  for (const Line& l1 : {la, cap1}) {
    for (const Line& l2 : {lb, cap2}) {
      const auto y = intersect_lines(l1, l2);
      if (y && std::abs(y->x2 - top(y->x1)) <= tol && std::abs(y->x1 - right(y->x2)) <= tol) {
        return *y;
      }
    }
  }
  return y_point(a, b, eps1, eps2);
}

double base_line_angle(Point2 a, Point2 b) {
  const Point2 da = a - kMutualDefection;
  const Point2 db = b - kMutualDefection;
  if (norm(da) <= kEta || norm(db) <= kEta) {
    throw Error(ErrorKind::DegenerateInput, "anchor coincides with (1,1)");
  }
  double alpha = std::abs(std::atan2(cross(da, db), dot(da, db)));
  // Lines, not rays: fold into [0, pi/2].
  if (alpha > std::numbers::pi / 2) alpha = std::numbers::pi - alpha;
  return alpha;
}

double y_distance_formula(Point2 a, Point2 b, double eps1, double eps2) {
  require_offset(eps1);
  require_offset(eps2);
  const double alpha = base_line_angle(a, b);
  if (alpha <= kEta) throw Error(ErrorKind::DegenerateAngle, "base lines are parallel");
  const double tan_a = std::tan(alpha);
  const double s = eps1 + eps2;
  return (s + std::sqrt(s * s + 4.0 * eps1 * eps2 * tan_a * tan_a)) / (2.0 * tan_a);
}

LimitPrediction predicted_limit(Point2 a, Point2 b, double eps1, double eps2) {
  require_anchor(a, "a");
  require_anchor(b, "b");
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "eps1 and eps2 must be positive");
  }
  const double a1 = a.x1;
  const double b1 = b.x1;
  if (std::abs(a1 - b1) <= kEta) return {LimitCase::SameA, a, std::nullopt};
  if (a1 <= 2.0 && 2.0 <= b1) return {LimitCase::CCPoint, kMutualCooperation, std::nullopt};
  if (a1 < b1 && b1 <= 2.0) return {LimitCase::BWins, b, std::nullopt};
  if (2.0 <= a1 && a1 < b1) return {LimitCase::AWins, a, std::nullopt};
  const Point2 y = y_limit(a, b, eps1, eps2);
  return {LimitCase::YPoint, y, distance(y, kMutualDefection)};
}

}  // namespace memdyn
