#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "memdyn/dynamics.hpp"
#include "memdyn/error.hpp"
#include "memdyn/sampling.hpp"

namespace memdyn {
namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::DegenerateInput;
}

Profile good_pair(double eps = 0.1) {
  return {MemoryStrategy::good(Player::One, eps), MemoryStrategy::good(Player::Two, eps)};
}

Profile semicoop_pair(Point2 a, Point2 b, double eps = 0.1) {
  return {MemoryStrategy::semicoop(Player::One, a, eps), MemoryStrategy::semicoop(Player::Two, b, eps)};
}

Profile constant_pair(Action a1, Action a2) {
  return {MemoryStrategy::constant(Player::One, a1), MemoryStrategy::constant(Player::Two, a2)};
}

// Unit normal of the line through (1,1) and v, oriented with positive x2 part.
Point2 base_normal(Point2 v) {
  const Point2 d = v - Point2{1, 1};
  return Point2{-d.x2, d.x1} / norm(d);
}

// Crossing of n1.(x - (1,1)) = e1 and n2.(x - (1,1)) = -e2 by Cramer's rule.
Point2 cramer_y(Point2 a, Point2 b, double e1, double e2) {
  const Point2 n1 = base_normal(a);
  const Point2 n2 = base_normal(b);
  const double det = n1.x1 * n2.x2 - n1.x2 * n2.x1;
  const double u = (e1 * n2.x2 + e2 * n1.x2) / det;
  const double w = (-n1.x1 * e2 - n2.x1 * e1) / det;
  return {1 + u, 1 + w};
}

TEST(StepMap, Examples) {
  EXPECT_EQ(step_map(good_pair(), {2, 2}), (Point2{2, 2}));
  EXPECT_EQ(step_map(constant_pair(Action::D, Action::D), {0.5, 2.5}), (Point2{1, 1}));
  const Profile egoists = semicoop_pair({2.25, 1.5}, {1.5, 2.25});
  const RegionPartition cells(*egoists.first().memory(), *egoists.second().memory());
  int seen = 0;
  for (Point2 x : sample_uniform(pd_polytope(), 20000, 5)) {
    if (cells.cell_of(x) != Cell::Omega1) continue;
    ++seen;
    ASSERT_EQ(step_map(egoists, x), (Point2{3, 0}));
  }
  EXPECT_GT(seen, 0);
  EXPECT_EQ(kind_of([] { step_map(good_pair(), {3, 3}); }), ErrorKind::OutOfDomain);
}

TEST(BetaStep, Arithmetic) {
  const Point2 y = beta_step(4, {1, 1}, {2, 2});
  EXPECT_DOUBLE_EQ(y.x1, 1.2);
  EXPECT_DOUBLE_EQ(y.x2, 1.2);
  EXPECT_EQ(beta_step(7, {2, 2}, good_pair()), (Point2{2, 2}));
}

TEST(BetaStep, StepBound) {
  const double diam = 3 * std::sqrt(2.0);
  EXPECT_NEAR(pd_polytope().diameter(), diam, 1e-15);
  const Profile p = semicoop_pair({2.25, 1.5}, {1.5, 2.25});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> t(1, 1000000);
  for (Point2 x : sample_uniform(pd_polytope(), 10000, 7)) {
    const std::int64_t k = t(rng);
    EXPECT_LE(distance(beta_step(k, x, p), x), diam / double(k + 1) + 1e-15);
  }
}

TEST(Simulate, ConstantDefectionClosedForm) {
  const std::int64_t T = 10000;
  const Trajectory tr = simulate(constant_pair(Action::D, Action::D), {0, 3}, 1, T);
  ASSERT_EQ(tr.size(), static_cast<std::size_t>(T));
  const Point2 want = (Point2{0, 3} + double(T - 1) * Point2{1, 1}) / double(T);
  EXPECT_NEAR(tr.back().x1, want.x1, 1e-12);
  EXPECT_NEAR(tr.back().x2, want.x2, 1e-12);
}

TEST(Simulate, GoodStrategiesReachMutualCooperation) {
  const RunSummary s = run(good_pair(), {1, 1}, 1, 1000000);
  EXPECT_LE(distance(s.final, {2, 2}), 0.02);
  EXPECT_LE(s.tail.spread, 0.01);
}

TEST(Simulate, SameAnchorConvergesToIt) {
  const Point2 v{1.5, 2.25};
  const Profile p = semicoop_pair(v, v);
  for (Point2 x0 : sample_uniform(pd_polytope(), 20, 99)) {
    EXPECT_LE(distance(run(p, x0, 1, 1000000).final, v), 0.02) << x0.x1 << "," << x0.x2;
  }
}

TEST(Simulate, RecurrenceContainmentAndDecay) {
  const Profile p = semicoop_pair({2.25, 1.5}, {1.5, 2.25});
  const Trajectory tr = simulate(p, {0.2, 2.8}, 1, 200000);
  const double diam = 3 * std::sqrt(2.0);
  for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
    const double t = double(tr.t_at(k));
    const Point2 r = (t + 1) * tr.points[k + 1] - t * tr.points[k] - tr.payoffs[k];
    // Normalized by t + 1: the raw residual scales with the round index.
    ASSERT_LE(norm(r) / (t + 1), kEta) << "t = " << t;
    ASSERT_TRUE(pd_polytope().contains(tr.points[k + 1], kEta));
    ASSERT_LE(distance(tr.points[k + 1], tr.points[k]), diam / (t + 1) + 1e-15);
  }
}

TEST(Simulate, RejectsBadHorizon) {
  EXPECT_EQ(kind_of([] { simulate(good_pair(), {1, 1}, 0, 10); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { simulate(good_pair(), {1, 1}, 10, 5); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { simulate(good_pair(), {3, 3}, 1, 5); }), ErrorKind::OutOfDomain);
}

TEST(Simulate, RunMatchesStoredTrajectory) {
  const Profile p = semicoop_pair({2.1, 1.8}, {1.8, 2.1});
  const Trajectory tr = simulate(p, {1.2, 1.7}, 1, 50000);
  const RunSummary s = run(p, {1.2, 1.7}, 1, 50000);
  EXPECT_NEAR(s.final.x1, tr.back().x1, 1e-14);
  EXPECT_NEAR(s.final.x2, tr.back().x2, 1e-14);
}

TEST(PredictedLimit, CaseTable) {
  const LimitPrediction cc = predicted_limit({1.5, 2.25}, {2.25, 1.5}, 0.1, 0.1);
  EXPECT_EQ(cc.kind, LimitCase::CCPoint);
  EXPECT_EQ(cc.limit, (Point2{2, 2}));
  const LimitPrediction bw = predicted_limit({1.2, 2.4}, {1.8, 2.1}, 0.1, 0.1);
  EXPECT_EQ(bw.kind, LimitCase::BWins);
  EXPECT_EQ(bw.limit, (Point2{1.8, 2.1}));
  const LimitPrediction same = predicted_limit({2.25, 1.5}, {2.25, 1.5}, 0.1, 0.1);
  EXPECT_EQ(same.kind, LimitCase::SameA);
  EXPECT_EQ(same.limit, (Point2{2.25, 1.5}));
  const LimitPrediction aw = predicted_limit({2.1, 1.8}, {2.25, 1.5}, 0.1, 0.1);
  EXPECT_EQ(aw.kind, LimitCase::AWins);
  EXPECT_EQ(aw.limit, (Point2{2.1, 1.8}));
  const LimitPrediction y = predicted_limit({2.25, 1.5}, {1.5, 2.25}, 0.1, 0.1);
  EXPECT_EQ(y.kind, LimitCase::YPoint);
  ASSERT_TRUE(y.y_distance.has_value());
  // Overlapping boundaries at a1 = b1 = 2 resolve to the first case.
  EXPECT_EQ(predicted_limit({2, 2}, {2, 2}, 0.1, 0.1).kind, LimitCase::SameA);
}

TEST(PredictedLimit, RejectsBadAnchors) {
  EXPECT_EQ(kind_of([] { predicted_limit({1, 2.5}, {2, 2}, 0.1, 0.1); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { predicted_limit({2, 2}, {1.5, 1.5}, 0.1, 0.1); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { predicted_limit({2, 2}, {2, 2}, 0.0, 0.1); }), ErrorKind::InvalidParameter);
}

TEST(YPoint, SymmetricEgoistsOnDiagonal) {
  const Point2 y = y_point({2.25, 1.5}, {1.5, 2.25}, 0.1, 0.1);
  EXPECT_NEAR(y.x1, y.x2, 1e-15);
  const Point2 z = y_point({2.25, 1.5}, {1.5, 2.25}, 0.0, 0.0);
  EXPECT_NEAR(z.x1, 1.0, 1e-15);
  EXPECT_NEAR(z.x2, 1.0, 1e-15);
}

TEST(YPoint, AgreesWithCramerAndOffsetDistances) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> s(0.01, 0.99);
  std::uniform_real_distribution<double> e(0.001, 0.2);
  const BetaCoreImage core = beta_core_image(make_pd());
  for (int k = 0; k < 100; ++k) {
    Point2 a = betacore_param(core, s(rng));
    Point2 b = betacore_param(core, s(rng));
    if (a.x1 < b.x1) std::swap(a, b);
    if (a.x1 - b.x1 < 1e-3) continue;
    const double e1 = e(rng), e2 = e(rng);
    const Point2 y = y_point(a, b, e1, e2);
    const Point2 c = cramer_y(a, b, e1, e2);
    EXPECT_NEAR(y.x1, c.x1, 1e-9);
    EXPECT_NEAR(y.x2, c.x2, 1e-9);
    EXPECT_NEAR(dot(base_normal(a), y - Point2{1, 1}), e1, 1e-9);
    EXPECT_NEAR(dot(base_normal(b), y - Point2{1, 1}), -e2, 1e-9);
  }
}

TEST(YDistanceFormula, ClosedForm) {
  const Point2 a{2.25, 1.5};
  const Point2 b{1.5, 2.25};
  EXPECT_EQ(y_distance_formula(a, b, 0.0, 0.0), 0.0);
  // Slopes 0.4 and 2.5 meet at alpha = atan(2.5) - atan(0.4).
  const double alpha = std::atan(2.5) - std::atan(0.4);
  EXPECT_NEAR(base_line_angle(a, b), alpha, 1e-15);
  // With eps1 = eps2 = e the expression reduces to e * cot(alpha / 2).
  EXPECT_NEAR(y_distance_formula(a, b, 0.1, 0.1), 0.1 / std::tan(alpha / 2), 1e-14);
  // Degree-one homogeneity in (eps1, eps2).
  for (double k : {1e-2, 1e-3, 1e-4}) {
    EXPECT_NEAR(y_distance_formula(a, b, 0.1 * k, 0.05 * k), k * y_distance_formula(a, b, 0.1, 0.05),
                1e-15);
  }
  EXPECT_EQ(kind_of([] { y_distance_formula({1.5, 2.25}, {1.5, 2.25}, 0.1, 0.1); }),
            ErrorKind::DegenerateAngle);
}

TEST(YLimit, CapsBindNearTheKink) {
  const Point2 a{2.05, 1.9};
  const Point2 b{1.9, 2.05};
  const Point2 raw = y_point(a, b, 0.1, 0.1);
  EXPECT_GT(raw.x2, a.x2);
  const Point2 y = y_limit(a, b, 0.1, 0.1);
  EXPECT_NEAR(y.x1, 1.9, 1e-12);
  EXPECT_NEAR(y.x2, 1.9, 1e-12);
  const RunSummary s = run(semicoop_pair(a, b), {1.5, 1.5}, 1, 1000000);
  EXPECT_LE(distance(s.final, y), 0.005);
  EXPECT_GT(distance(s.final, raw), 0.02);
}

TEST(YLimit, UncappedEqualsYPoint) {
  const Point2 a{2.25, 1.5};
  const Point2 b{1.5, 2.25};
  const Point2 y = y_limit(a, b, 0.1, 0.1);
  EXPECT_EQ(y, y_point(a, b, 0.1, 0.1));
  EXPECT_LE(distance(run(semicoop_pair(a, b), {2, 2}, 1, 1000000).final, y), 0.02);
}

TEST(EstimateLimit, ConstantAndShort) {
  const Trajectory tr = simulate(constant_pair(Action::C, Action::C), {2, 2}, 1, 500);
  const LimitEstimate e = estimate_limit(tr);
  EXPECT_EQ(e.spread, 0.0);
  EXPECT_TRUE(e.converged);
  const Trajectory shortr = simulate(constant_pair(Action::C, Action::C), {2, 2}, 1, 50);
  EXPECT_EQ(kind_of([&] { estimate_limit(shortr); }), ErrorKind::InsufficientData);
}

TEST(EstimateLimit, AlternatingPayoffsCesaro) {
  auto alternate = [](std::int64_t t, Point2) { return t % 2 == 1 ? Point2{0, 3} : Point2{3, 0}; };
  const std::int64_t T = 100000;
  const Trajectory tr = simulate_map(alternate, pd_polytope(), {1.5, 1.5}, 1, T);
  // x0 = 1.5 followed by 0, 3, 0, 3, ...: the sum is 1.5 t at odd t and 1.5 t - 1.5 at even t.
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const std::int64_t t = tr.t_at(k);
    const double dev = t % 2 == 0 ? 1.5 / double(t) : 0.0;
    ASSERT_NEAR(tr.points[k].x1, 1.5 - dev, 1e-12) << t;
  }
  const LimitEstimate e = estimate_limit(tr);
  const double t_begin = double(tr.t_at(tail_begin(tr.size(), kDefaultTailFraction)));
  EXPECT_LE(e.spread, 3.0 / t_begin);
  EXPECT_TRUE(e.converged);
}

TEST(EstimateLimit, InitialPointIndependence) {
  const Profile p = semicoop_pair({2.1, 1.8}, {1.8, 2.1});
  std::vector<Point2> limits;
  for (Point2 x0 : sample_uniform(pd_polytope(), 10, 77)) limits.push_back(run(p, x0, 1, 1000000).final);
  for (Point2 u : limits) {
    for (Point2 w : limits) EXPECT_LE(distance(u, w), 0.05);
  }
}

TEST(PointSpread, HullDiameter) {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0.5, 0.2}, {0, 1}, {1, 1}};
  EXPECT_NEAR(point_spread(pts), std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace memdyn
