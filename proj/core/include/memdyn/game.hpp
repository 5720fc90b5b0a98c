#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "memdyn/geometry.hpp"

namespace memdyn {

/// Finite two-player normal-form game with vector payoffs.
class Game {
 public:
  // `payoffs` is row-major: payoffs[i * actions2.size() + j] = u(i, j).
  Game(std::vector<std::string> actions1, std::vector<std::string> actions2,
       std::vector<Point2> payoffs);

  std::size_t rows() const { return actions1_.size(); }
  std::size_t cols() const { return actions2_.size(); }
  const std::vector<std::string>& actions1() const { return actions1_; }
  const std::vector<std::string>& actions2() const { return actions2_; }
  const std::vector<Point2>& payoffs() const { return payoffs_; }
  Point2 payoff(std::size_t i, std::size_t j) const { return payoffs_[i * cols() + j]; }

  // Same game with the roles of the players exchanged.
  Game transposed() const;

 private:
  std::vector<std::string> actions1_;
  std::vector<std::string> actions2_;
  std::vector<Point2> payoffs_;
};

/// Joint distribution over action pairs of a game, row-major like its payoff
/// table: weights[i * cols + j] is the probability of (i, j).
struct CorrelatedStrategy {
  std::vector<double> weights;

  // Throws InvalidParameter unless the weights match the table, are
  // nonnegative and sum to 1 within kEta * size.
  void validate(const Game& g) const;
  Point2 expected_payoff(const Game& g) const;

  static CorrelatedStrategy pure(const Game& g, std::size_t i, std::size_t j);
};

// Prisoner's dilemma with u(C,C)=(2,2), u(C,D)=(0,3), u(D,C)=(3,0), u(D,D)=(1,1).
Game make_pd();

// Fixed landmarks of make_pd() used throughout the strategy definitions.
inline constexpr Point2 kMutualCooperation{2.0, 2.0};
inline constexpr Point2 kSucker{0.0, 3.0};
inline constexpr Point2 kTemptation{3.0, 0.0};
inline constexpr Point2 kMutualDefection{1.0, 1.0};

// The payoff polytope of make_pd(), built once.
const ConvexPolygon& pd_polytope();

ConvexPolygon payoff_polytope(const Game& g);

struct MinmaxValues {
  double v1 = 0.0;
  double v2 = 0.0;
};

// Mixed-strategy minmax value of each player. Exact for opponents with at
// most two actions; a small simplex LP otherwise.
MinmaxValues minmax_values(const Game& g);

struct Segment {
  Point2 a;
  Point2 b;
};

// Maximal weakly Pareto-optimal boundary pieces of the payoff polytope,
// ordered by increasing x1. Isolated points come back as a == b.
std::vector<Segment> weak_pareto_frontier(const Game& g);

/// Image of the beta-core in payoff space. For two players this is the weak
/// Pareto frontier cut by the minmax box.
struct BetaCoreImage {
  std::vector<Segment> segments;
  // Endpoints lying on the minmax box; excluded from strategy anchors.
  std::vector<Point2> excluded_endpoints;

  bool empty() const { return segments.empty(); }
  double length() const;
  bool contains(Point2 x, double tol = 1e-9) const;
  bool is_excluded(Point2 x, double tol = 1e-9) const;
};

BetaCoreImage beta_core_image(const Game& g);

// Shared by clamping and grid construction.
inline constexpr double kParamClamp = 1e-6;

// Arc-length parameterization of the beta-core image, s in [0, 1]. When the
// image carries excluded endpoints s is clamped to [kParamClamp, 1 - kParamClamp].
Point2 betacore_param(const BetaCoreImage& core, double s);
Point2 betacore_param(const Game& g, double s);

}  // namespace memdyn
