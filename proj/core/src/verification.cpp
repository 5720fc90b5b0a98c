#include "memdyn/verification.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <random>

#include "memdyn/error.hpp"
#include "memdyn/format.hpp"
#include "memdyn/game.hpp"
#include "memdyn/sampling.hpp"

namespace memdyn {

Region Region::from_polygon(std::string name, ConvexPolygon poly, double tol) {
  Region r;
  r.name = std::move(name);
  r.contains = [poly, tol](Point2 x) { return poly.contains(x, tol); };
  r.polygon = std::move(poly);
  return r;
}

Region Region::from_predicate(std::string name, std::function<bool(Point2)> pred) {
  if (!pred) throw Error(ErrorKind::InvalidParameter, "region needs a predicate");
  return Region{std::move(name), std::move(pred), std::nullopt};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

SetCheckReport blackwell_check(const Trajectory& traj, const ConvexPolygon& W, double dist_tol,
                               double inner_tol) {
  if (W.empty()) throw Error(ErrorKind::InvalidParameter, "target set W is empty");
  if (traj.size() == 0) throw Error(ErrorKind::InsufficientData, "empty trajectory");
  SetCheckReport rep;
  rep.horizon = traj.t_end();
  std::size_t violations = 0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const Point2 x = traj.points[k];
    const Point2 y = distance_to(W, x).point;
    if (dot(x - y, traj.payoffs[k] - y) > inner_tol) {
      if (++violations <= kMaxWitnesses) rep.witnesses.push_back({traj.t_at(k), x, traj.payoffs[k]});
    }
  }
  const double final_dist = distance_to(W, traj.back()).distance;
  rep.verdict = violations == 0 && final_dist <= dist_tol ? Verdict::Holds : Verdict::Violated;
  if (final_dist > dist_tol && rep.witnesses.empty()) {
    rep.witnesses.push_back({traj.t_end(), traj.back(), distance_to(W, traj.back()).point});
  }
  rep.detail = "inner-product violations " + std::to_string(violations) + ", final distance " +
               format_number(final_dist);
  return rep;
}

namespace {

std::vector<Point2> region_samples(const Region& Z, std::size_t n, std::uint64_t seed) {
  if (Z.polygon) {
    const ConvexPolygon& poly = *Z.polygon;
    std::vector<Point2> pts(poly.vertices().begin(), poly.vertices().end());
    if (poly.shape() == Shape::Polygon) {
      const auto inner = sample_uniform(poly, n, seed);
      pts.insert(pts.end(), inner.begin(), inner.end());
    }
    return pts;
  }
  return sample_where(pd_polytope(), Z.contains, n, seed);
}

// t, 2t, 4t, ... capped at limit, always ending with limit.
std::vector<std::int64_t> geometric_schedule(std::int64_t limit) {
  std::vector<std::int64_t> ts;
  for (std::int64_t t = 1; t < limit; t = std::max(t + 1, t + t / 4)) ts.push_back(t);
  ts.push_back(limit);
  return ts;
}

void add_witness(SetCheckReport& rep, const Region& Z, const Profile& profile, Point2 x,
                 std::int64_t t) {
  if (rep.witnesses.size() >= kMaxWitnesses) return;
  // Larger steps only move farther out of a convex set along the same ray.
  for (std::int64_t s = t; s >= 1; s /= 2) {
    const Point2 next = beta_step(s, x, profile.payoff(s, x));
    if (!Z.contains(next)) {
      rep.witnesses.push_back({s, x, next});
      return;
    }
  }
}

}  // namespace

SetCheckReport invariant_check(const Region& Z, const Profile& profile, std::size_t sample_n,
                               std::int64_t t_max, std::uint64_t seed) {
  if (sample_n == 0) throw Error(ErrorKind::InvalidParameter, "sample_n must be positive");
  if (t_max < 1) throw Error(ErrorKind::InvalidParameter, "t_max must be at least 1");
  SetCheckReport rep;
  rep.seed = seed;
  rep.horizon = 10 * t_max;
  const std::vector<Point2> samples = region_samples(Z, sample_n, seed);
  rep.samples = samples.size();
  if (samples.empty()) {
    rep.detail = "no sample points found in the region";
    return rep;
  }

  if (Z.polygon && Z.polygon->shape() == Shape::Polygon && profile.is_memory()) {
    // f is time-independent, so beta_t(x) stays in Z exactly when the step
    // fraction 1/(t+1) is at most the largest feasible fraction toward f(x).
    std::int64_t t_z = 1;
    bool never = false;
    std::vector<std::pair<Point2, std::int64_t>> late;
    for (const Point2& x : samples) {
      const double lambda = Z.polygon->max_step_fraction(x, profile.payoff(1, x));
      if (lambda <= 0.0) {
        never = true;
        late.emplace_back(x, rep.horizon);
        continue;
      }
      const double need = std::ceil(1.0 / lambda - 1.0);
      const auto t_x = need >= static_cast<double>(rep.horizon)
                           ? rep.horizon
                           : std::max<std::int64_t>(1, static_cast<std::int64_t>(need));
      t_z = std::max(t_z, t_x);
      if (t_x > t_max) late.emplace_back(x, std::min(t_x - 1, rep.horizon));
    }
    if (!never && t_z <= t_max) {
      rep.verdict = Verdict::Holds;
      rep.analytic = true;
      rep.t_threshold = t_z;
      rep.detail = "exact step analysis on " + std::to_string(samples.size()) + " samples";
      return rep;
    }
    for (const auto& [x, t] : late) add_witness(rep, Z, profile, x, t);
    rep.verdict = rep.witnesses.empty() ? Verdict::Inconclusive : Verdict::Violated;
    rep.t_threshold = never ? 0 : t_z;
    rep.detail = never ? "a sample point leaves the region for every t"
                       : "no threshold up to t_max; sampled threshold " + std::to_string(t_z);
    return rep;
  }

  const std::vector<std::int64_t> ts = geometric_schedule(rep.horizon);
  std::int64_t t_z = 1;
  bool violated_at_horizon = false;
  for (const Point2& x : samples) {
    std::optional<std::size_t> last_fail;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!Z.contains(beta_step(ts[i], x, profile.payoff(ts[i], x)))) last_fail = i;
    }
    if (!last_fail) continue;
    if (*last_fail + 1 == ts.size()) {
      violated_at_horizon = true;
      add_witness(rep, Z, profile, x, ts.back());
      continue;
    }
    t_z = std::max(t_z, ts[*last_fail + 1]);
    if (ts[*last_fail + 1] > t_max) add_witness(rep, Z, profile, x, ts[*last_fail]);
  }
  if (!violated_at_horizon && t_z <= t_max) {
    rep.verdict = Verdict::Inconclusive;
    rep.t_threshold = t_z;
    rep.detail = "holds on the sampled schedule up to t = " + std::to_string(rep.horizon);
  } else {
    rep.verdict = rep.witnesses.empty() ? Verdict::Inconclusive : Verdict::Violated;
    rep.t_threshold = violated_at_horizon ? 0 : t_z;
    rep.detail = "no threshold up to t_max";
  }
  return rep;
}

namespace {

template <typename Pred>
SetCheckReport tail_check(const Region& Z, const std::vector<Trajectory>& trajectories,
                          double tail_fraction, Pred wanted, const char* what) {
  if (trajectories.empty()) throw Error(ErrorKind::InsufficientData, "no trajectories given");
  SetCheckReport rep;
  rep.horizon = trajectories.front().t_end();
  std::size_t failures = 0;
  for (const Trajectory& traj : trajectories) {
    if (traj.size() == 0) throw Error(ErrorKind::InsufficientData, "empty trajectory");
    rep.horizon = std::min(rep.horizon, traj.t_end());
    const std::size_t begin = tail_begin(traj.size(), tail_fraction);
    bool seen = false;
    for (std::size_t k = begin; k < traj.size() && !seen; ++k) seen = wanted(Z.contains(traj.points[k]));
    if (!seen) {
      ++failures;
      if (rep.witnesses.size() < kMaxWitnesses) {
        rep.witnesses.push_back({traj.t_end(), traj.points[begin], traj.back()});
      }
    }
  }
  rep.verdict = failures == 0 ? Verdict::Inconclusive : Verdict::Violated;
  rep.detail = std::to_string(trajectories.size() - failures) + "/" +
               std::to_string(trajectories.size()) + " trajectories " + what +
               " in the trailing window";
  return rep;
}

}  // namespace

SetCheckReport absorbing_check(const Region& Z, const std::vector<Trajectory>& trajectories,
                               double tail_fraction) {
  return tail_check(Z, trajectories, tail_fraction, [](bool in) { return in; }, "visit the region");
}

SetCheckReport escape_check(const Region& Z, const std::vector<Trajectory>& trajectories,
                            double tail_fraction) {
  return tail_check(Z, trajectories, tail_fraction, [](bool in) { return !in; }, "leave the region");
}

EscapeHypothesis escape_hypothesis(const Region& Z, const Profile& profile, const ConvexPolygon& W,
                                   double eps, std::size_t sample_n, std::uint64_t seed) {
  if (W.empty()) throw Error(ErrorKind::InvalidParameter, "target set W is empty");
  EscapeHypothesis h;
  const auto samples = region_samples(Z, sample_n, seed);
  h.samples = samples.size();
  if (samples.empty()) return h;
  h.maps_into_w = true;
  h.min_distance = std::numeric_limits<double>::infinity();
  for (const Point2& x : samples) {
    h.maps_into_w = h.maps_into_w && distance_to(W, profile.payoff(1, x)).distance <= kEta;
    h.min_distance = std::min(h.min_distance, distance_to(W, x).distance);
  }
  h.separated = h.min_distance > eps;
  return h;
}

CesaroBounds cesaro_bounds(std::span<const double> averages, double window_fraction) {
  if (averages.size() < 100) {
    throw Error(ErrorKind::InsufficientData, "Cesaro bounds need at least 100 values");
  }
  CesaroBounds b;
  b.window_begin = tail_begin(averages.size(), window_fraction);
  b.window_end = averages.size();
  const auto [lo, hi] = std::minmax_element(averages.begin() + static_cast<std::ptrdiff_t>(b.window_begin),
                                            averages.end());
  b.liminf_hat = *lo;
  b.limsup_hat = *hi;
  return b;
}

std::vector<double> running_means(std::span<const double> series) {
  std::vector<double> out;
  out.reserve(series.size());
  long double sum = 0.0L;
  for (std::size_t n = 0; n < series.size(); ++n) {
    sum += series[n];
    out.push_back(static_cast<double>(sum / static_cast<long double>(n + 1)));
  }
  return out;
}

MeanBarrierResult mean_barrier_check(std::span<const double> series, double c, double tol) {
  const std::vector<double> means = running_means(series);
  MeanBarrierResult r;
  const double above = c + kEta * std::max(1.0, std::abs(c));
  for (std::size_t n = means.size() / 2; n + 1 < means.size(); ++n) {
    if (means[n] > above && series[n + 1] > c) ++r.premise_violations;
  }
  r.premise_holds = r.premise_violations == 0;
  r.limsup_hat = cesaro_bounds(means).limsup_hat;
  r.conclusion_holds = r.limsup_hat <= c + tol;
  return r;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Policy scripted(std::string name, Policy::Script s) { return Policy(std::move(name), std::move(s)); }

Action defect_if(bool d) { return d ? Action::D : Action::C; }

}  // namespace

std::vector<Opponent> default_opponent_suite() {
  std::vector<Opponent> suite;
  auto add = [&](Policy p) {
    std::string name = p.describe();
    suite.push_back({std::move(name), std::move(p)});
  };

  add(MemoryStrategy::constant(Player::Two, Action::C));
  add(MemoryStrategy::constant(Player::Two, Action::D));

  // Simple strategies: unit normals on a grid of angles, r chosen from the
  // feasible interval of each.
  for (int k = 0; k < 72 && suite.size() < 22; ++k) {
    const double th = 2.0 * 3.14159265358979323846 * (k + 0.5) / 72.0;
    const double p = std::cos(th);
    const double q = std::sin(th);
    // r must satisfy -L0(u) <= r for u in {(2,2),(0,3)} and r <= -L0(u) for u in {(1,1),(3,0)}.
    const double lo = std::max(-(2 * p + 2 * q), -(3 * q));
    const double hi = std::min(-(p + q), -(3 * p));
    if (lo > hi) continue;
    add(MemoryStrategy::simple(Player::Two, p, q, 0.5 * (lo + hi)));
  }
  add(MemoryStrategy::simple(Player::Two, -1.0, 1.0, 0.0));

  const BetaCoreImage core = beta_core_image(make_pd());
  for (double eps : {0.1, 0.05}) {
    for (int k = 1; k <= 9; ++k) add(MemoryStrategy::semicoop(Player::Two, betacore_param(core, k / 10.0), eps));
  }
  for (double eps : {0.01, 0.05, 0.1, 0.2, 0.5}) add(MemoryStrategy::good(Player::Two, eps));

  add(MemoryStrategy::custom(Player::Two, [](Point2 x) { return x.x1 >= x.x2; }, "custom:behind"));
  add(MemoryStrategy::custom(Player::Two, [](Point2 x) { return x.x1 + x.x2 < 3.5; }, "custom:sum"));
  add(MemoryStrategy::custom(Player::Two, [](Point2 x) { return x.x2 < 1.5; }, "custom:poor"));
  add(MemoryStrategy::custom(
      Player::Two, [](Point2 x) { return distance(x, {1.8, 1.8}) <= 0.3; }, "custom:disk"));

  add(scripted("script:alternate", [](std::int64_t t, Point2) { return defect_if(t % 2 == 0); }));
  add(scripted("script:ccd", [](std::int64_t t, Point2) { return defect_if(t % 3 == 2); }));
  add(scripted("script:doubling-blocks", [](std::int64_t t, Point2) {
    // Blocks [2^k, 2^(k+1)) alternate between C and D.
    return defect_if(std::bit_width(static_cast<std::uint64_t>(t)) % 2 == 0);
  }));
  add(scripted("script:coin", [](std::int64_t t, Point2) {
    return defect_if(splitmix64(static_cast<std::uint64_t>(t)) & 1U);
  }));
  add(scripted("script:late-defector", [](std::int64_t t, Point2) { return defect_if(t >= 1000); }));
  add(scripted("script:edge-prober", [](std::int64_t, Point2 x) {
    // Defects while its lead stays under 0.05, cooperates to pull back otherwise.
    return defect_if(x.x2 < x.x1 + 0.05);
  }));
  add(scripted("script:anti-good", [](std::int64_t, Point2 x) {
    const bool good_would_cooperate = x.x2 < x.x1 + 0.1 && x.x1 >= 1.0 && x.x2 <= 2.0;
    return defect_if(good_would_cooperate);
  }));
  add(scripted("script:greedy-cap", [](std::int64_t t, Point2 x) {
    return defect_if(x.x2 <= 2.0 || t % 7 == 0);
  }));
  return suite;
}

bool SafetyReport::all_ok() const {
  return std::all_of(runs.begin(), runs.end(),
                     [](const SafetyRun& r) { return r.floor_ok && r.ceiling_ok && r.margin_ok; });
}

SafetyReport safety_check(const MemoryStrategy& player1, const std::vector<Opponent>& suite,
                          const std::vector<Point2>& x0s, std::int64_t T, double tol) {
  if (player1.player() != Player::One) {
    throw Error(ErrorKind::InvalidParameter, "safety check expects a player 1 strategy");
  }
  const bool is_good = std::holds_alternative<MemoryStrategy::Good>(player1.kind());
  const bool is_semicoop = std::holds_alternative<MemoryStrategy::SemiCooperative>(player1.kind());
  if (!is_good && !is_semicoop) {
    throw Error(ErrorKind::InvalidParameter, "safety check needs a good or semi-cooperative player 1");
  }
  if (suite.empty() || x0s.empty()) throw Error(ErrorKind::InvalidParameter, "empty opponent suite");

  SafetyReport rep;
  rep.player1 = player1.describe();
  rep.eps = *player1.eps();
  rep.cap = is_good ? 2.0 : player1.anchor()->x2;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  for (const Opponent& opp : suite) {
    const Profile profile(player1, opp.policy);
    for (const Point2& x0 : x0s) {
      const RunSummary s = run(profile, x0, 1, T);
      SafetyRun r;
      r.opponent = opp.name;
      r.x0 = x0;
      const auto window = [&](double lo, double hi) {
        return CesaroBounds{lo, hi, static_cast<std::size_t>(s.tail.t_begin - 1),
                            static_cast<std::size_t>(s.tail.t_end)};
      };
      r.p1 = window(s.tail.min.x1, s.tail.max.x1);
      r.p2 = window(s.tail.min.x2, s.tail.max.x2);
      r.margin = r.p2.limsup_hat - r.p1.limsup_hat;
      r.floor_ok = r.p1.liminf_hat >= 1.0 - tol;
      r.ceiling_ok = r.p2.limsup_hat <= rep.cap + tol;
      r.margin_ok = !is_good || r.margin <= rep.eps + tol;
      rep.worst_margin = std::max(rep.worst_margin, r.margin);
      rep.runs.push_back(std::move(r));
    }
  }
  return rep;
}

namespace {

void require_o_delta_args(Point2 v, double delta, double eps1, double eps2) {
  if (!(delta > 0.0) || !(delta < std::min(eps1, eps2))) {
    throw Error(ErrorKind::InvalidParameter, "delta must lie in (0, min(eps1, eps2))");
  }
  const BetaCoreImage core = beta_core_image(make_pd());
  if (!core.contains(v) || core.is_excluded(v)) {
    throw Error(ErrorKind::InvalidParameter, "v = " + format_point(v) + " is not an interior beta-core point");
  }
}

Line vertical_at(double x1) { return Line::from_coefficients(1.0, 0.0, x1); }

ConvexPolygon mirrored(const ConvexPolygon& poly) {
  std::vector<Point2> pts;
  for (const Point2& p : poly.vertices()) pts.push_back(swapped(p));
  return convex_hull(pts);
}

}  // namespace

ConvexPolygon build_O_delta_literal(Point2 v, double delta, double eps1, double eps2) {
  require_o_delta_args(v, delta, eps1, eps2);
  const Point2 P{v.x1 - delta, v.x2 - delta};
  const Line l1 = line_through(P, kTemptation);
  const Line l2 = line_through(P, kSucker);
  std::vector<HalfPlane> cuts{HalfPlane::over(l1), HalfPlane::over(l2)};
  if (std::abs(v.x1 - kMutualCooperation.x1) > kEta) {
    const Point2 R = *intersect_lines(l2, vertical_at(v.x1));
    cuts.push_back(HalfPlane::over(line_through(R, kMutualCooperation)));
  }
  cuts.push_back(HalfPlane::under(vertical_at(v.x1 + delta)));
  return pd_polytope().clipped(cuts);
}

ConvexPolygon build_O_delta(Point2 v, double delta, double eps1, double eps2) {
  if (v.x1 > kMutualCooperation.x1 + kEta) {
    return mirrored(build_O_delta(swapped(v), delta, eps2, eps1));
  }
  return build_O_delta_literal(v, delta, eps1, eps2)
      .clipped(HalfPlane::over(vertical_at(v.x1 - delta)));
}

}  // namespace memdyn
