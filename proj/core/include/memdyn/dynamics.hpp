#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "memdyn/game.hpp"
#include "memdyn/geometry.hpp"
#include "memdyn/strategies.hpp"

namespace memdyn {

/// Decision rule of one player inside a run: either a memory strategy or a
/// scripted rule that may also look at the round index.
class Policy {
 public:
  using Script = std::function<Action(std::int64_t t, Point2 x)>;

  Policy(MemoryStrategy s);  // NOLINT(google-explicit-constructor)
  Policy(std::string name, Script script);

  Action act(std::int64_t t, Point2 x) const;
  // Null for scripted policies.
  const MemoryStrategy* memory() const { return memory_ ? &*memory_ : nullptr; }
  std::string describe() const;

 private:
  std::optional<MemoryStrategy> memory_;
  std::string name_;
  Script script_;
};

/// A pair of policies playing a 2x2 game (the prisoner's dilemma by default).
class Profile {
 public:
  Profile(Policy p1, Policy p2);
  Profile(Policy p1, Policy p2, const Game& game);

  const Policy& first() const { return p1_; }
  const Policy& second() const { return p2_; }
  // Time-independent when both policies are memory strategies.
  bool is_memory() const { return p1_.memory() && p2_.memory(); }

  std::array<Action, 2> actions(std::int64_t t, Point2 x) const {
    return {p1_.act(t, x), p2_.act(t, x)};
  }
  Point2 payoff(std::array<Action, 2> a) const {
    return table_[2 * static_cast<int>(a[0]) + static_cast<int>(a[1])];
  }
  Point2 payoff(std::int64_t t, Point2 x) const { return payoff(actions(t, x)); }
  const ConvexPolygon& polytope() const { return polytope_; }

 private:
  Policy p1_;
  Policy p2_;
  std::array<Point2, 4> table_;
  ConvexPolygon polytope_;
};

// f(x) = u(s1(x), s2(x)); throws OutOfDomain for x outside the polytope.
Point2 step_map(const Profile& profile, Point2 x, std::int64_t t = 1);

// (t*x + f(x)) / (t + 1).
Point2 beta_step(std::int64_t t, Point2 x, const Profile& profile);
Point2 beta_step(std::int64_t t, Point2 x, Point2 fx);

/// Full record of a run. Index k corresponds to round t = t0 + k; actions[k]
/// and payoffs[k] are decided at points[k], and
/// points[k+1] = (t*points[k] + payoffs[k]) / (t+1).
struct Trajectory {
  std::int64_t t0 = 1;
  std::vector<Point2> points;
  std::vector<std::array<Action, 2>> actions;
  std::vector<Point2> payoffs;

  std::size_t size() const { return points.size(); }
  std::int64_t t_at(std::size_t k) const { return t0 + static_cast<std::int64_t>(k); }
  std::int64_t t_end() const { return t_at(points.size() - 1); }
  Point2 back() const { return points.back(); }
};

// Rounds t0..T; x0 is the average at round t0.
Trajectory simulate(const Profile& profile, Point2 x0, std::int64_t t0, std::int64_t T);

// Same recurrence driven by an arbitrary map; actions are left as (C, C).
Trajectory simulate_map(const std::function<Point2(std::int64_t, Point2)>& f,
                        const ConvexPolygon& domain, Point2 x0, std::int64_t t0,
                        std::int64_t T);

inline constexpr double kDefaultTailFraction = 0.1;
inline constexpr double kDefaultSpreadTol = 0.02;

/// Statistics of the trailing window of a run.
struct TailStats {
  std::int64_t t_begin = 0;
  std::int64_t t_end = 0;
  Point2 min;
  Point2 max;
  double spread = 0.0;  // largest pairwise distance between tail points
};

struct RunSummary {
  Point2 x0;
  Point2 final;
  TailStats tail;
  std::int64_t steps = 0;
  std::array<std::int64_t, 4> action_counts{};  // CC, CD, DC, DD
};

// Streaming run without storing the trajectory.
RunSummary run(const Profile& profile, Point2 x0, std::int64_t t0, std::int64_t T,
               double tail_fraction = kDefaultTailFraction);

struct LimitEstimate {
  Point2 point;
  double spread = 0.0;
  bool converged = false;
};

// point = last average; spread over the trailing fraction of the run.
LimitEstimate estimate_limit(const Trajectory& traj, double tail_fraction = kDefaultTailFraction,
                             double tol = kDefaultSpreadTol);

// First index of the trailing window of n points.
std::size_t tail_begin(std::size_t n, double tail_fraction);

// Largest pairwise distance of a point set, via its convex hull.
double point_spread(std::span<const Point2> pts);

enum class LimitCase { SameA, CCPoint, BWins, AWins, YPoint };
std::string_view to_string(LimitCase c);

struct LimitPrediction {
  LimitCase kind;
  Point2 limit;
  std::optional<double> y_distance;  // |limit - (1,1)| in the YPoint case
};

// Limit of two semi-cooperative players anchored at a (player 1) and b
// (player 2). Cases are tested in the order SameA, CCPoint, BWins, AWins, YPoint.
LimitPrediction predicted_limit(Point2 a, Point2 b, double eps1, double eps2);

// Crossing of the outer boundary lines of (T_1(a))^eps1 and (T_2(b))^eps2.
Point2 y_point(Point2 a, Point2 b, double eps1, double eps2);

// Crossing of the full cooperation-region boundaries, box caps included. This
// is where trajectories settle when b1 < a1; it equals y_point unless a cap
// x2 <= a2 or x1 <= b1 binds first.
Point2 y_limit(Point2 a, Point2 b, double eps1, double eps2);

// (e1 + e2 + sqrt((e1 + e2)^2 + 4 e1 e2 tan^2 alpha)) / (2 tan alpha) with
// alpha the angle between l((1,1), a) and l((1,1), b).
double y_distance_formula(Point2 a, Point2 b, double eps1, double eps2);

// Angle between l((1,1), a) and l((1,1), b), in [0, pi/2].
double base_line_angle(Point2 a, Point2 b);

}  // namespace memdyn
