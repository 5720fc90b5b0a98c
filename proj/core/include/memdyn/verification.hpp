#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "memdyn/dynamics.hpp"
#include "memdyn/geometry.hpp"

namespace memdyn {

/// A subset of the payoff plane given by a membership predicate, optionally
/// backed by a convex polygon (which enables exact step analysis).
struct Region {
  std::string name;
  std::function<bool(Point2)> contains;
  std::optional<ConvexPolygon> polygon;

  static Region from_polygon(std::string name, ConvexPolygon poly, double tol = kEta);
  static Region from_predicate(std::string name, std::function<bool(Point2)> pred);
};

enum class Verdict { Holds, Violated, Inconclusive };
std::string_view to_string(Verdict v);

struct Witness {
  std::int64_t t = 0;
  Point2 x;     // point at round t
  Point2 next;  // beta_t(x) (or the offending later point for trajectory checks)
};

struct SetCheckReport {
  Verdict verdict = Verdict::Inconclusive;
  // Holds for every t >= t_threshold by the convexity argument rather than by
  // horizon-bounded sampling.
  bool analytic = false;
  std::vector<Witness> witnesses;
  std::int64_t t_threshold = 0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string detail;

  // Holds or inconclusive-positive.
  bool passed() const { return verdict != Verdict::Violated; }
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr std::size_t kMaxWitnesses = 8;

/// Proximal-point condition <xbar_t - y_t, x_t - y_t> <= inner_tol at every
/// logged step (x_t the recorded stage payoff, y_t the proximal point of xbar_t
/// in W) and dist(xbar_T, W) <= dist_tol at the end.
SetCheckReport blackwell_check(const Trajectory& traj, const ConvexPolygon& W,
                               double dist_tol = kDefaultSpreadTol, double inner_tol = 1e-9);

/// Searches t_Z with beta_t(x) in Z for all sampled x in Z and t >= t_Z.
/// Polygonal Z under a memory profile is analysed exactly per sample; other
/// regions are checked on a geometric schedule of t up to 10 * t_max.
SetCheckReport invariant_check(const Region& Z, const Profile& profile, std::size_t sample_n,
                               std::int64_t t_max, std::uint64_t seed = kDefaultSeed);

/// Every trajectory is in Z somewhere in its trailing window.
SetCheckReport absorbing_check(const Region& Z, const std::vector<Trajectory>& trajectories,
                               double tail_fraction = kDefaultTailFraction);

/// Every trajectory is outside Z somewhere in its trailing window.
SetCheckReport escape_check(const Region& Z, const std::vector<Trajectory>& trajectories,
                            double tail_fraction = kDefaultTailFraction);

/// Escape premise on samples of Z: f(Z) within W, and dist(W, Z) > eps.
struct EscapeHypothesis {
  bool maps_into_w = false;
  bool separated = false;
  double min_distance = 0.0;  // smallest sampled dist(x, W), x in Z
  std::size_t samples = 0;

  bool holds() const { return maps_into_w && separated; }
};
EscapeHypothesis escape_hypothesis(const Region& Z, const Profile& profile, const ConvexPolygon& W,
                                   double eps, std::size_t sample_n,
                                   std::uint64_t seed = kDefaultSeed);

struct CesaroBounds {
  double liminf_hat = 0.0;
  double limsup_hat = 0.0;
  std::size_t window_begin = 0;  // index range [begin, end)
  std::size_t window_end = 0;
};

// Min and max of the running averages over the trailing window.
CesaroBounds cesaro_bounds(std::span<const double> averages,
                           double window_fraction = kDefaultTailFraction);

// Running averages of a stage series: m_n = (a_1 + ... + a_n) / n.
std::vector<double> running_means(std::span<const double> series);

struct MeanBarrierResult {
  bool premise_holds = false;
  bool conclusion_holds = false;
  std::size_t premise_violations = 0;
  double limsup_hat = 0.0;
};

/// Barrier property of arithmetic means: if m_n > c forces a_{n+1} <= c for all
/// large n then limsup m_n <= c. The premise is checked over the trailing half
/// of the series, the conclusion on the trailing window with slack `tol`.
MeanBarrierResult mean_barrier_check(std::span<const double> series, double c,
                                     double tol = kDefaultSpreadTol);

/// Opponent of player 1 in the safety suite.
struct Opponent {
  std::string name;
  Policy policy;
};

// Constants, simple-affine grid, mismatched semi-cooperative anchors, good
// strategies with other eps, custom regions and time-scripted adversaries.
std::vector<Opponent> default_opponent_suite();

struct SafetyRun {
  std::string opponent;
  Point2 x0;
  CesaroBounds p1;
  CesaroBounds p2;
  double margin = 0.0;          // limsup2 - limsup1
  bool floor_ok = false;        // liminf x1 >= 1 - tol
  bool ceiling_ok = false;      // limsup x2 <= cap + tol (2 for good, v2 for semicoop)
  bool margin_ok = false;       // margin <= eps + tol (good strategies only)
};

struct SafetyReport {
  std::string player1;
  double eps = 0.0;
  double cap = 0.0;
  std::vector<SafetyRun> runs;
  double worst_margin = 0.0;
  bool all_ok() const;
};

SafetyReport safety_check(const MemoryStrategy& player1, const std::vector<Opponent>& suite,
                          const std::vector<Point2>& x0s, std::int64_t T,
                          double tol = kDefaultSpreadTol);

/// Neighborhood of v from the over-half-planes of l1 = l(P, (3,0)),
/// l2 = l(P, (0,3)), l3 = l(R, (2,2)) with P = v - (delta, delta) and
/// R = l2 cut by {x1 = v1}, intersected with {x1 <= v1 + delta} and the PD
/// polytope. For v1 = 2 the line l3 is vertical and is dropped.
ConvexPolygon build_O_delta_literal(Point2 v, double delta, double eps1, double eps2);

/// The local part of the neighborhood: build_O_delta_literal cut to the strip
/// v1 - delta <= x1 <= v1 + delta, which removes a thin sliver reaching (0,3).
/// Anchors with v1 > 2 use the mirror image of the construction at (v2, v1).
ConvexPolygon build_O_delta(Point2 v, double delta, double eps1, double eps2);

}  // namespace memdyn
