#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "memdyn/error.hpp"
#include "memdyn/game.hpp"

namespace memdyn {
namespace {

// min over opponent mixtures (grid of step h) of the best pure reply, player 1.
double grid_minmax_row(const Game& g, double h) {
  double best = INFINITY;
  const int n = static_cast<int>(std::lround(1.0 / h));
  if (g.cols() == 2) {
    for (int k = 0; k <= n; ++k) {
      const double q = k * h;
      double reply = -INFINITY;
      for (std::size_t i = 0; i < g.rows(); ++i) {
        reply = std::max(reply, q * g.payoff(i, 0).x1 + (1 - q) * g.payoff(i, 1).x1);
      }
      best = std::min(best, reply);
    }
    return best;
  }
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      const double w[3] = {a * h, b * h, 1.0 - (a + b) * h};
      double reply = -INFINITY;
      for (std::size_t i = 0; i < g.rows(); ++i) {
        double u = 0.0;
        for (std::size_t j = 0; j < 3; ++j) u += w[j] * g.payoff(i, j).x1;
        reply = std::max(reply, u);
      }
      best = std::min(best, reply);
    }
  }
  return best;
}

TEST(MakePd, Payoffs) {
  const Game g = make_pd();
  EXPECT_EQ(g.payoff(0, 0), (Point2{2, 2}));
  EXPECT_EQ(g.payoff(1, 1), (Point2{1, 1}));
  EXPECT_EQ(g.payoff(0, 1), (Point2{0, 3}));
  EXPECT_EQ(g.payoff(1, 0), (Point2{3, 0}));
}

TEST(Game, RejectsNonTotalTable) {
  try {
    Game({"C", "D"}, {"C", "D"}, {{2, 2}, {0, 3}, {3, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }
}

TEST(PayoffPolytope, Shapes) {
  EXPECT_EQ(payoff_polytope(make_pd()).vertices().size(), 4u);
  const Game flat({"a", "b"}, {"a", "b"}, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
  EXPECT_EQ(payoff_polytope(flat).shape(), Shape::Point);
  const Game pennies({"H", "T"}, {"H", "T"}, {{1, -1}, {-1, 1}, {-1, 1}, {1, -1}});
  const ConvexPolygon p = payoff_polytope(pennies);
  EXPECT_EQ(p.shape(), Shape::Segment);
  EXPECT_NEAR(p.diameter(), 2 * std::sqrt(2.0), 1e-15);
}

TEST(MinmaxValues, PrisonersDilemma) {
  const MinmaxValues v = minmax_values(make_pd());
  EXPECT_NEAR(v.v1, 1.0, 1e-12);
  EXPECT_NEAR(v.v2, 1.0, 1e-12);
  EXPECT_NEAR(grid_minmax_row(make_pd(), 1e-4), 1.0, 1e-12);
}

TEST(MinmaxValues, MatchingPenniesIsZero) {
  const Game pennies({"H", "T"}, {"H", "T"}, {{1, -1}, {-1, 1}, {-1, 1}, {1, -1}});
  const MinmaxValues v = minmax_values(pennies);
  EXPECT_NEAR(v.v1, 0.0, 1e-12);
  EXPECT_NEAR(v.v2, 0.0, 1e-12);
}

TEST(MinmaxValues, AgreesWithGridOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const std::size_t cols = k % 2 == 0 ? 2 : 3;
    std::vector<Point2> pay(3 * cols);
    for (Point2& p : pay) p = {u(rng), u(rng)};
    std::vector<std::string> a2(cols, "x");
    const Game g({"a", "b", "c"}, a2, pay);
    const double h = cols == 2 ? 1e-4 : 2e-3;
    // Payoffs span at most 4, so the grid minimum is off by at most 4h per weight moved.
    EXPECT_NEAR(minmax_values(g).v1, grid_minmax_row(g, h), 8 * h) << "game " << k;
    EXPECT_NEAR(minmax_values(g).v2, grid_minmax_row(g.transposed(), h), 8 * h) << "game " << k;
  }
}

TEST(MinmaxValues, SymmetricGameHasEqualValues) {
  const Game stag({"S", "H"}, {"S", "H"}, {{4, 4}, {0, 3}, {3, 0}, {3, 3}});
  const MinmaxValues v = minmax_values(stag);
  EXPECT_NEAR(v.v1, v.v2, 1e-12);
}

TEST(WeakPareto, PrisonersDilemma) {
  const auto f = weak_pareto_frontier(make_pd());
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].a, (Point2{0, 3}));
  EXPECT_EQ(f[0].b, (Point2{2, 2}));
  EXPECT_EQ(f[1].a, (Point2{2, 2}));
  EXPECT_EQ(f[1].b, (Point2{3, 0}));
}

TEST(WeakPareto, PointGame) {
  const Game flat({"a"}, {"a"}, {{1, 1}});
  const auto f = weak_pareto_frontier(flat);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].a, f[0].b);
}

TEST(WeakPareto, UnitSquareTopAndRightEdges) {
  const Game sq({"a", "b"}, {"a", "b"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto f = weak_pareto_frontier(sq);
  // Brute force: grid points of the square not strictly dominated by another grid point.
  const int n = 100;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const Point2 x{i / double(n), j / double(n)};
      const bool weakly_optimal = i == n || j == n;
      bool on_frontier = false;
      for (const Segment& s : f) {
        const Point2 d = s.b - s.a;
        const double len2 = dot(d, d);
        const double t = len2 > 0 ? std::clamp(dot(x - s.a, d) / len2, 0.0, 1.0) : 0.0;
        on_frontier = on_frontier || distance(s.a + t * d, x) <= 1e-12;
      }
      EXPECT_EQ(on_frontier, weakly_optimal) << x.x1 << "," << x.x2;
    }
  }
}

TEST(BetaCore, PrisonersDilemmaExact) {
  const BetaCoreImage core = beta_core_image(make_pd());
  ASSERT_EQ(core.segments.size(), 2u);
  EXPECT_EQ(core.segments[0].a, (Point2{1, 2.5}));
  EXPECT_EQ(core.segments[0].b, (Point2{2, 2}));
  EXPECT_EQ(core.segments[1].a, (Point2{2, 2}));
  EXPECT_EQ(core.segments[1].b, (Point2{2.5, 1}));
  ASSERT_EQ(core.excluded_endpoints.size(), 2u);
  EXPECT_TRUE(core.is_excluded({1, 2.5}));
  EXPECT_TRUE(core.is_excluded({2.5, 1}));
  EXPECT_FALSE(core.is_excluded({2, 2}));
}

TEST(BetaCore, MembershipAndRationality) {
  const BetaCoreImage core = beta_core_image(make_pd());
  for (int k = 0; k <= 100; ++k) {
    const double x = 1.0 + k / 100.0;
    EXPECT_TRUE(core.contains({x, 3 - x / 2}));
    EXPECT_TRUE(core.contains({3 - x / 2, x}));
  }
  EXPECT_FALSE(core.contains({0.5, 2.75}));
  EXPECT_FALSE(core.contains({1.5, 1.5}));
}

TEST(BetaCore, ScalesWithThePayoffs) {
  const Game pd = make_pd();
  std::vector<Point2> doubled;
  for (Point2 p : pd.payoffs()) doubled.push_back(2.0 * p);
  const BetaCoreImage core = beta_core_image(Game({"C", "D"}, {"C", "D"}, doubled));
  ASSERT_EQ(core.segments.size(), 2u);
  EXPECT_EQ(core.segments[0].a, (Point2{2, 5}));
  EXPECT_EQ(core.segments[0].b, (Point2{4, 4}));
  EXPECT_EQ(core.segments[1].b, (Point2{5, 2}));
}

TEST(BetaCore, ParamOnEmptyImageUnsupported) {
  try {
    betacore_param(BetaCoreImage{}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(BetaCoreParam, Landmarks) {
  const Game g = make_pd();
  EXPECT_EQ(betacore_param(g, 0.5), (Point2{2, 2}));
  const Point2 q = betacore_param(g, 0.25);
  EXPECT_NEAR(q.x1, 1.5, 1e-15);
  EXPECT_NEAR(q.x2, 2.25, 1e-15);
  EXPECT_NEAR(q.x2, 3 - q.x1 / 2, 1e-15);
  const Point2 r = betacore_param(g, 0.75);
  EXPECT_NEAR(r.x1, 2.25, 1e-15);
  EXPECT_NEAR(r.x2, 1.5, 1e-15);
}

TEST(BetaCoreParam, ClampsAwayFromExcludedEndpoints) {
  const BetaCoreImage core = beta_core_image(make_pd());
  EXPECT_FALSE(core.is_excluded(betacore_param(core, 0.0), 1e-9));
  EXPECT_FALSE(core.is_excluded(betacore_param(core, 1.0), 1e-9));
}

TEST(BetaCoreParam, LipschitzInArcLength) {
  const BetaCoreImage core = beta_core_image(make_pd());
  const double L = 2 * std::sqrt(1.25);
  EXPECT_NEAR(core.length(), L, 1e-15);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const double s = u(rng);
    const double t = u(rng);
    EXPECT_LE(distance(betacore_param(core, s), betacore_param(core, t)), L * std::abs(s - t) + 1e-12);
  }
}

TEST(CorrelatedStrategy, ExpectedPayoff) {
  const Game g = make_pd();
  const CorrelatedStrategy half{{0.0, 0.5, 0.5, 0.0}};
  EXPECT_EQ(half.expected_payoff(g), (Point2{1.5, 1.5}));
  EXPECT_EQ(CorrelatedStrategy::pure(g, 1, 1).expected_payoff(g), (Point2{1, 1}));
  try {
    CorrelatedStrategy{{0.5, 0.5, 0.5, -0.5}}.validate(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }
  const CorrelatedStrategy over{{0.5, 0.6, 0.0, 0.0}};
  EXPECT_THROW(over.validate(g), Error);
}

}  // namespace
}  // namespace memdyn
