#include "memdyn/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "memdyn/dynamics.hpp"
#include "memdyn/format.hpp"
#include "memdyn/game.hpp"
#include "memdyn/metagame.hpp"
#include "memdyn/sampling.hpp"
#include "memdyn/strategies.hpp"
#include "memdyn/verification.hpp"

namespace memdyn {

namespace {

constexpr double kEps = 0.1;
constexpr double kLimitTol = 0.02;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::vector<Point2> random_starts(std::size_t n, std::uint64_t seed) {
  return sample_uniform(pd_polytope(), n, seed);
}

Profile semicoop_profile(Point2 a, Point2 b, double e1, double e2) {
  return Profile(MemoryStrategy::semicoop(Player::One, a, e1), MemoryStrategy::semicoop(Player::Two, b, e2));
}

Outcome good_vs_good(const AcceptanceOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const Profile profile(MemoryStrategy::good(Player::One, kEps), MemoryStrategy::good(Player::Two, kEps));
  double worst = 0.0;
  for (Point2 x0 : random_starts(20, o.seed)) {
    worst = std::max(worst, distance(run(profile, x0, 1, o.T).final, kMutualCooperation));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= kLimitTol && secs < 10.0,
          "20 runs, max |x_T - (2,2)| = " + num(worst) + ", " + num(secs) + " s"};
}

// Criteria 2 and 3 share one sweep.
const SafetyReport& safety_sweep(const AcceptanceOptions& o) {
  static std::optional<SafetyReport> cached;
  static std::int64_t cached_T = -1;
  if (!cached || cached_T != o.T) {
    const std::vector<Point2> x0s{{1.5, 1.5}, {0.5, 2.5}};
    cached = safety_check(MemoryStrategy::good(Player::One, kEps), default_opponent_suite(), x0s, o.T,
                          kLimitTol);
    cached_T = o.T;
  }
  return *cached;
}

Outcome good_bounds(const AcceptanceOptions& o) {
  const std::size_t suite = default_opponent_suite().size();
  const SafetyReport& rep = safety_sweep(o);
  double min_floor = 1e9;
  double max_ceiling = -1e9;
  std::size_t bad = 0;
  for (const SafetyRun& r : rep.runs) {
    min_floor = std::min(min_floor, r.p1.liminf_hat);
    max_ceiling = std::max(max_ceiling, r.p2.limsup_hat);
    bad += !(r.floor_ok && r.ceiling_ok);
  }
  return {suite >= 50 && bad == 0,
          std::to_string(suite) + " opponents, " + std::to_string(rep.runs.size()) +
              " runs, min liminf x1 = " + num(min_floor) + ", max limsup x2 = " + num(max_ceiling)};
}

Outcome good_safety(const AcceptanceOptions& o) {
  const SafetyReport& rep = safety_sweep(o);
  const bool ok = std::all_of(rep.runs.begin(), rep.runs.end(), [](const SafetyRun& r) { return r.margin_ok; });
  return {ok && !rep.runs.empty(), std::to_string(rep.runs.size()) + " runs, worst limsup2 - limsup1 = " +
                                       num(rep.worst_margin) + " (bound " + num(kEps + kLimitTol) + ")"};
}

const std::vector<Point2>& anchor_trio() {
  static const std::vector<Point2> vs{{1.5, 2.25}, {2.0, 2.0}, {2.25, 1.5}};
  return vs;
}

Outcome same_anchor(const AcceptanceOptions& o) {
  double worst = 0.0;
  for (Point2 v : anchor_trio()) {
    const Profile profile = semicoop_profile(v, v, kEps, kEps);
    for (Point2 x0 : random_starts(10, o.seed + 1)) {
      worst = std::max(worst, distance(run(profile, x0, 1, o.T).final, v));
    }
  }
  return {worst <= kLimitTol, "30 runs, max |x_T - v| = " + num(worst)};
}

Outcome limit_table(const AcceptanceOptions& o) {
  constexpr std::size_t n = 9;
  const BetaCoreImage core = beta_core_image(make_pd());
  std::vector<Point2> grid;
  for (std::size_t k = 0; k < n; ++k) grid.push_back(betacore_param(core, (k + 0.5) / n));
  const std::vector<Point2> starts = random_starts(5, o.seed + 2);
  double worst = 0.0;
  std::size_t bad = 0;
  std::size_t y_cells = 0;
  for (Point2 a : grid) {
    for (Point2 b : grid) {
      const LimitPrediction pred = predicted_limit(a, b, kEps, kEps);
      y_cells += pred.kind == LimitCase::YPoint;
      const Profile profile = semicoop_profile(a, b, kEps, kEps);
      double cell = 0.0;
      for (Point2 x0 : starts) cell = std::max(cell, distance(run(profile, x0, 1, o.T).final, pred.limit));
      worst = std::max(worst, cell);
      bad += cell > 0.05;
    }
  }
  return {bad == 0, "81 cells (" + std::to_string(y_cells) + " y cells), max deviation " + num(worst) +
                        ", cells over 0.05: " + std::to_string(bad)};
}

Outcome y_formula(const AcceptanceOptions& o) {
  Rng rng(o.seed + 3);
  std::uniform_real_distribution<double> s_dist(0.02, 0.98);
  std::uniform_real_distribution<double> e_dist(0.01, 0.2);
  const BetaCoreImage core = beta_core_image(make_pd());
  double worst = 0.0;
  int count = 0;
  while (count < 100) {
    Point2 a = betacore_param(core, s_dist(rng));
    Point2 b = betacore_param(core, s_dist(rng));
    if (std::abs(a.x1 - b.x1) < 1e-3) continue;
    if (b.x1 > a.x1) std::swap(a, b);
    const double e1 = e_dist(rng);
    const double e2 = e_dist(rng);
    const double geometric = distance(y_point(a, b, e1, e2), kMutualDefection);
    worst = std::max(worst, std::abs(geometric - y_distance_formula(a, b, e1, e2)));
    ++count;
  }
  const bool agree = worst <= 1e-9;

  const Point2 a{2.25, 1.5};
  const Point2 b{1.5, 2.25};
  double worst_ratio = 0.0;
  for (double e : {1e-3, 1e-4, 1e-5, 1e-6}) {
    worst_ratio = std::max(worst_ratio, distance(y_point(a, b, e, e), kMutualDefection) / e);
  }
  const bool shrinks = worst_ratio <= 10.0;
  return {agree && shrinks, "formula vs intersection: max |diff| = " + num(worst) +
                                " over 100 draws (needs <= 1e-9); small-eps distance/eps <= " +
                                num(worst_ratio) + " (needs <= 10)"};
}

Outcome beta_core_exact(const AcceptanceOptions&) {
  const BetaCoreImage core = beta_core_image(make_pd());
  const Point2 lo{1.0, 2.5};
  const Point2 mid{2.0, 2.0};
  const Point2 hi{2.5, 1.0};
  bool ok = core.segments.size() == 2 && core.segments[0].a == lo && core.segments[0].b == mid &&
            core.segments[1].a == mid && core.segments[1].b == hi;
  for (int k = 0; k <= 100 && ok; ++k) {
    const double x = 1.0 + k / 100.0;
    ok = core.contains({x, 3.0 - x / 2.0}, kEta) && core.contains({3.0 - x / 2.0, x}, kEta);
  }
  std::ostringstream os;
  for (const Segment& s : core.segments) os << '[' << s.a << " - " << s.b << "] ";
  return {ok, "segments " + os.str()};
}

Outcome blackwell(const AcceptanceOptions& o) {
  // Player 1 always cooperates, so every stage payoff is (2,2) or (0,3).
  const ConvexPolygon W = convex_hull({kMutualCooperation, kSucker});
  const BetaCoreImage core = beta_core_image(make_pd());
  std::vector<Policy> opponents{
      MemoryStrategy::good(Player::Two, kEps),
      MemoryStrategy::semicoop(Player::Two, betacore_param(core, 0.25), kEps),
      MemoryStrategy::semicoop(Player::Two, betacore_param(core, 0.75), kEps),
      MemoryStrategy::semicoop(Player::Two, betacore_param(core, 0.5), 0.05),
      MemoryStrategy::simple(Player::Two, -1.0, 1.0, 0.0),
      MemoryStrategy::constant(Player::Two, Action::C),
      MemoryStrategy::constant(Player::Two, Action::D),
      MemoryStrategy::custom(Player::Two, [](Point2 x) { return x.x2 < 2.5; }, "custom:x2<2.5"),
      Policy("script:alternate", [](std::int64_t t, Point2) { return t % 2 ? Action::C : Action::D; }),
      Policy("script:doubling-blocks",
             [](std::int64_t t, Point2) { return std::bit_width(static_cast<std::uint64_t>(t)) % 2 ? Action::C : Action::D; }),
  };
  const std::vector<Point2> starts = random_starts(opponents.size(), o.seed + 4);
  std::size_t bad = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < opponents.size(); ++k) {
    const Profile profile(MemoryStrategy::constant(Player::One, Action::C), opponents[k]);
    const Trajectory traj = simulate(profile, starts[k], 1, o.T);
    const SetCheckReport rep = blackwell_check(traj, W, kLimitTol);
    bad += rep.verdict != Verdict::Holds;
    worst = std::max(worst, distance_to(W, traj.back()).distance);
  }
  return {bad == 0, std::to_string(opponents.size()) + " trajectories, max dist(x_T, W) = " + num(worst) +
                        ", failing checks: " + std::to_string(bad)};
}

Outcome neighborhoods(const AcceptanceOptions& o) {
  constexpr double delta = kEps / 8.0;
  std::ostringstream os;
  bool ok = true;
  for (Point2 v : anchor_trio()) {
    const Profile profile = semicoop_profile(v, v, kEps, kEps);
    const Region Z = Region::from_polygon("O_delta", build_O_delta(v, delta, kEps, kEps));
    const SetCheckReport inv = invariant_check(Z, profile, 10'000, o.T, o.seed + 5);
    std::vector<Trajectory> trajs;
    for (Point2 x0 : random_starts(20, o.seed + 6)) trajs.push_back(simulate(profile, x0, 1, o.T));
    const SetCheckReport abs = absorbing_check(Z, trajs);
    ok = ok && inv.verdict == Verdict::Holds && abs.passed();
    os << '(' << format_point(v) << ": invariant " << to_string(inv.verdict) << " t_Z=" << inv.t_threshold
       << ", absorbing " << to_string(abs.verdict) << ") ";
  }

  // Cell where only player 2 cooperates: f maps it to (3,0), which is far away.
  const Point2 v{1.5, 2.25};
  const Profile profile = semicoop_profile(v, v, kEps, kEps);
  const RegionPartition part(MemoryStrategy::semicoop(Player::One, v, kEps),
                             MemoryStrategy::semicoop(Player::Two, v, kEps));
  const Region cell = Region::from_predicate("Omega1", [part](Point2 x) { return part.cell_of(x) == Cell::Omega1; });
  const ConvexPolygon W = convex_hull({kTemptation});
  const EscapeHypothesis hyp = escape_hypothesis(cell, profile, W, kEps, 10'000, o.seed + 7);
  std::vector<Trajectory> trajs;
  for (Point2 x0 : sample_where(pd_polytope(), cell.contains, 10, o.seed + 8)) {
    trajs.push_back(simulate(profile, x0, 1, o.T));
  }
  const SetCheckReport esc = escape_check(cell, trajs);
  ok = ok && hyp.holds() && trajs.size() == 10 && esc.verdict != Verdict::Violated;
  os << "escape cell: hypothesis " << (hyp.holds() ? "holds" : "fails") << " (min dist "
     << num(hyp.min_distance) << "), " << to_string(esc.verdict);
  return {ok, os.str()};
}

Outcome properties(const AcceptanceOptions& o) {
  std::ostringstream os;
  bool ok = true;

  // Recurrence exactness, hull containment and step decay on stored runs.
  const std::int64_t T = std::min<std::int64_t>(o.T, 200'000);
  const BetaCoreImage core = beta_core_image(make_pd());
  std::vector<Profile> profiles{
      Profile(MemoryStrategy::good(Player::One, kEps), MemoryStrategy::good(Player::Two, kEps)),
      semicoop_profile({2.25, 1.5}, {1.5, 2.25}, kEps, kEps),
      semicoop_profile(betacore_param(core, 0.3), betacore_param(core, 0.6), 0.05, 0.2),
      Profile(MemoryStrategy::good(Player::One, kEps),
              Policy("script:coin", [](std::int64_t t, Point2) { return (t * 2654435761LL) % 7 < 3 ? Action::C : Action::D; })),
  };
  const double step_bound = 3.0 * std::sqrt(2.0);
  double residual = 0.0;
  double excess_step = 0.0;
  bool inside = true;
  const auto starts = random_starts(profiles.size(), o.seed + 9);
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const Trajectory traj = simulate(profiles[k], starts[k], 1, T);
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
      const long double t = static_cast<long double>(traj.t_at(i));
      for (int c = 0; c < 2; ++c) {
        const long double x = c ? traj.points[i].x2 : traj.points[i].x1;
        const long double f = c ? traj.payoffs[i].x2 : traj.payoffs[i].x1;
        const long double y = c ? traj.points[i + 1].x2 : traj.points[i + 1].x1;
        residual = std::max(residual, static_cast<double>(std::abs(y - (t * x + f) / (t + 1))));
      }
      excess_step = std::max(excess_step, distance(traj.points[i + 1], traj.points[i]) -
                                              step_bound / static_cast<double>(t + 1));
    }
    for (Point2 x : traj.points) inside = inside && pd_polytope().contains(x, kEta);
  }
  const bool exact = residual <= kEta;
  const bool decays = excess_step <= kEta;
  ok = ok && exact && inside && decays;
  os << "recurrence residual " << num(residual) << ", hull " << (inside ? "ok" : "FAIL") << ", step excess "
     << num(excess_step);

  // Partition: each sample in exactly one cell, computed independently from the two regions.
  const auto s1 = MemoryStrategy::semicoop(Player::One, {2.25, 1.5}, kEps);
  const auto s2 = MemoryStrategy::semicoop(Player::Two, {1.5, 2.25}, kEps);
  const RegionPartition part(s1, s2);
  const ConvexPolygon k1 = std::get<MemoryStrategy::SemiCooperative>(s1.kind()).region.polygon(pd_polytope());
  const ConvexPolygon k2 = std::get<MemoryStrategy::SemiCooperative>(s2.kind()).region.polygon(pd_polytope());
  std::size_t partition_bad = 0;
  for (Point2 x : sample_uniform(pd_polytope(), 100'000, o.seed + 10)) {
    const bool in1 = k1.contains(x, 1e-9);
    const bool in2 = k2.contains(x, 1e-9);
    const int hits = (in1 && in2) + (in2 && !in1) + (in1 && !in2) + (!in1 && !in2);
    const Cell expect = in1 && in2 ? Cell::Delta : in2 ? Cell::Omega1 : in1 ? Cell::Omega2 : Cell::Omega3;
    partition_bad += hits != 1 || part.cell_of(x) != expect;
  }
  ok = ok && partition_bad == 0;
  os << ", partition mismatches " << partition_bad;

  double asym = 0.0;
  for (std::size_t n : {5, 9}) {
    asym = std::max(asym, swap_asymmetry(build_matrix(n, kEps, kEps, MetagameMode::Predicted)));
  }
  const bool symmetric = asym <= 1e-12;
  const MetagameMatrix m = build_matrix(5, kEps, kEps, MetagameMode::Predicted);
  const auto nash = pure_nash(m);
  const bool cc_nash = std::any_of(nash.begin(), nash.end(), [&](const CellIndex& c) {
    return m.grid[c.first] == kMutualCooperation && m.grid[c.second] == kMutualCooperation;
  });
  ok = ok && symmetric && cc_nash;
  os << ", swap asymmetry " << num(asym) << ", (2,2)x(2,2) nash " << (cc_nash ? "yes" : "no");
  return {ok, os.str()};
}

using CriterionFn = std::function<Outcome(const AcceptanceOptions&)>;

struct Criterion {
  const char* name;
  CriterionFn fn;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"two good strategies reach (2,2)", good_vs_good},
      {"good strategy payoff floor and opponent ceiling", good_bounds},
      {"good strategy eps-safety margin", good_safety},
      {"same-anchor semi-cooperative profiles reach v", same_anchor},
      {"two-anchor limit table", limit_table},
      {"y-point distance formula", y_formula},
      {"PD beta-core endpoints", beta_core_exact},
      {"proximal-point approachability", blackwell},
      {"invariant, absorbing and escape fixtures", neighborhoods},
      {"property suites", properties},
  };
  return all;
}

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) return "unknown";
  return criteria()[static_cast<std::size_t>(id - 1)].name;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " (" + r.name +
         "): " + r.detail + " [" + num(r.seconds) + " s]";
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = criteria()[static_cast<std::size_t>(id - 1)].fn(opts);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) *log << format_result(r) << std::endl;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace memdyn
