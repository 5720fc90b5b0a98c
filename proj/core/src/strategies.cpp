#include "memdyn/strategies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "memdyn/error.hpp"
#include "memdyn/format.hpp"
#include "memdyn/game.hpp"
#include "memdyn/sampling.hpp"

namespace memdyn {

char to_char(Action a) { return a == Action::C ? 'C' : 'D'; }
int index_of(Player p) { return p == Player::One ? 0 : 1; }
Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }

std::string_view to_string(PlayerType t) {
  switch (t) {
    case PlayerType::Egoist: return "egoist";
    case PlayerType::Altruist: return "altruist";
    case PlayerType::Balanced: return "balanced";
  }
  return "unknown";
}

PlayerType classify_player(Point2 v, Player player) {
  const double lead = player == Player::One ? v.x1 - v.x2 : v.x2 - v.x1;
  if (std::abs(lead) <= kEta) return PlayerType::Balanced;
  return lead > 0.0 ? PlayerType::Egoist : PlayerType::Altruist;
}

namespace {

const BetaCoreImage& pd_core() {
  static const BetaCoreImage core = beta_core_image(make_pd());
  return core;
}

Line vertical(double x1) { return Line::from_coefficients(1.0, 0.0, x1); }
Line horizontal(double x2) { return Line::from_coefficients(0.0, 1.0, x2); }

void require_positive_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::InvalidParameter, "eps must be a positive finite number");
  }
}

}  // namespace

bool CooperationRegion::contains(Point2 x, double tol) const {
  if (!offset.contains(x, tol)) return false;
  return std::all_of(box.begin(), box.end(), [&](const HalfPlane& h) { return h.contains(x, tol); });
}

ConvexPolygon CooperationRegion::polygon(const ConvexPolygon& domain) const {
  return domain.clipped(offset).clipped(box);
}

CooperationRegion semicoop_region(Player player, Point2 v, double eps) {
  require_positive_eps(eps);
  if (std::abs(v.x1 - kMutualDefection.x1) <= kEta) {
    throw Error(ErrorKind::InvalidParameter, "anchor needs v1 != 1 for the base line slope");
  }
  const Line base_line = line_through(kMutualDefection, v);
  const HalfPlane base =
      player == Player::One ? HalfPlane::under(base_line) : HalfPlane::over(base_line);
  CooperationRegion region{base, eps, offset_halfplane(base, eps), {}};
  if (player == Player::One) {
    region.box = {HalfPlane::over(vertical(kMutualDefection.x1)), HalfPlane::under(horizontal(v.x2))};
  } else {
    region.box = {HalfPlane::under(vertical(v.x1)), HalfPlane::over(horizontal(kMutualDefection.x2))};
  }
  return region;
}

bool simple_constraints_hold(double p, double q, double r) {
  if (p == 0.0 && q == 0.0) return false;
  auto L = [&](Point2 x) { return p * x.x1 + q * x.x2 + r; };
  constexpr double tol = 1e-12;
  return L(kMutualDefection) <= tol && L(kTemptation) <= tol && L(kMutualCooperation) >= -tol &&
         L(kSucker) >= -tol;
}

MemoryStrategy MemoryStrategy::good(Player player, double eps) {
  require_positive_eps(eps);
  return MemoryStrategy(player, Good{eps});
}

MemoryStrategy MemoryStrategy::semicoop(Player player, Point2 v, double eps) {
  if (pd_core().is_excluded(v)) {
    throw Error(ErrorKind::InvalidParameter,
                "anchor " + format_point(v) + " is an excluded beta-core endpoint");
  }
  CooperationRegion region = semicoop_region(player, v, eps);
  const bool off_core = !pd_core().contains(v);
  MemoryStrategy s(player, SemiCooperative{v, eps, std::move(region), off_core});
  if (off_core) {
    s.warnings_.push_back("anchor " + format_point(v) + " is not on the beta-core image");
  }
  return s;
}

MemoryStrategy MemoryStrategy::simple(Player player, double p, double q, double r) {
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(r) || !simple_constraints_hold(p, q, r)) {
    throw Error(ErrorKind::InvalidParameter,
                "simple strategy violates L(1,1), L(3,0) <= 0 <= L(2,2), L(0,3)");
  }
  return MemoryStrategy(player, Simple{p, q, r});
}

MemoryStrategy MemoryStrategy::constant(Player player, Action action) {
  return MemoryStrategy(player, Constant{action});
}

MemoryStrategy MemoryStrategy::custom(Player player, std::function<bool(Point2)> cooperates,
                                      std::string name) {
  if (!cooperates) {
    throw Error(ErrorKind::InvalidParameter, "custom strategy needs a predicate");
  }
  return MemoryStrategy(player, Custom{std::move(cooperates), std::move(name)});
}

bool MemoryStrategy::cooperates(Point2 x) const {
  // Players 2's strategies are mirror images: evaluate player 1's rule at (x2, x1).
  const Point2 own = player_ == Player::One ? x : swapped(x);
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Good>) {
          return own.x2 < own.x1 + k.eps && own.x1 >= 1.0 && own.x2 <= 2.0;
        } else if constexpr (std::is_same_v<K, SemiCooperative>) {
          return k.region.contains(x);
        } else if constexpr (std::is_same_v<K, Simple>) {
          return k.p * own.x1 + k.q * own.x2 + k.r <= 0.0;
        } else if constexpr (std::is_same_v<K, Constant>) {
          return k.action == Action::C;
        } else {
          return k.cooperates(x);
        }
      },
      kind_);
}

Action MemoryStrategy::evaluate(Point2 x, const ConvexPolygon& domain) const {
  if (!domain.contains(x, kEta)) {
    throw Error(ErrorKind::OutOfDomain, "point " + format_point(x) + " is outside the payoff polytope");
  }
  return (*this)(x);
}

std::optional<Point2> MemoryStrategy::anchor() const {
  if (const auto* k = std::get_if<SemiCooperative>(&kind_)) return k->anchor;
  if (std::holds_alternative<Good>(kind_)) return kMutualCooperation;
  return std::nullopt;
}

std::optional<double> MemoryStrategy::eps() const {
  if (const auto* k = std::get_if<SemiCooperative>(&kind_)) return k->eps;
  if (const auto* k = std::get_if<Good>(&kind_)) return k->eps;
  return std::nullopt;
}

std::string MemoryStrategy::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Good>) {
          return "good:eps=" + format_number(k.eps);
        } else if constexpr (std::is_same_v<K, SemiCooperative>) {
          return "semicoop:v=" + format_point(k.anchor) + ":eps=" + format_number(k.eps);
        } else if constexpr (std::is_same_v<K, Simple>) {
          return "simple:p=" + format_number(k.p) + ",q=" + format_number(k.q) +
                 ",r=" + format_number(k.r);
        } else if constexpr (std::is_same_v<K, Constant>) {
          return std::string("const:") + to_char(k.action);
        } else {
          return k.name;
        }
      },
      kind_);
}

namespace {

// {p*y1 + q*y2 <= r} in the player's own coordinates, mapped back to (x1, x2).
HalfPlane own_halfplane(Player player, double p, double q, double r) {
  if (player == Player::Two) std::swap(p, q);
  const Line l = Line::from_coefficients(p, q, r);
  return dot(l.normal(), {p, q}) > 0.0 ? HalfPlane::under(l) : HalfPlane::over(l);
}

}  // namespace

std::optional<ConvexPolygon> cooperation_polygon(const MemoryStrategy& s, const ConvexPolygon& domain) {
  const Player pl = s.player();
  return std::visit(
      [&](const auto& k) -> std::optional<ConvexPolygon> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, MemoryStrategy::Good>) {
          const HalfPlane hs[] = {own_halfplane(pl, -1.0, 1.0, k.eps), own_halfplane(pl, -1.0, 0.0, -1.0),
                                  own_halfplane(pl, 0.0, 1.0, 2.0)};
          return domain.clipped(hs);
        } else if constexpr (std::is_same_v<K, MemoryStrategy::SemiCooperative>) {
          return k.region.polygon(domain);
        } else if constexpr (std::is_same_v<K, MemoryStrategy::Simple>) {
          return domain.clipped(own_halfplane(pl, k.p, k.q, -k.r));
        } else if constexpr (std::is_same_v<K, MemoryStrategy::Constant>) {
          return k.action == Action::C ? domain : ConvexPolygon{};
        } else {
          return std::nullopt;
        }
      },
      s.kind());
}

std::string_view to_string(Cell c) {
  switch (c) {
    case Cell::Delta: return "Delta";
    case Cell::Omega1: return "Omega1";
    case Cell::Omega2: return "Omega2";
    case Cell::Omega3: return "Omega3";
  }
  return "unknown";
}

RegionPartition::RegionPartition(MemoryStrategy s1, MemoryStrategy s2)
    : s1_(std::move(s1)), s2_(std::move(s2)) {
  if (s1_.player() != Player::One || s2_.player() != Player::Two) {
    throw Error(ErrorKind::InvalidParameter, "partition expects (player 1, player 2) strategies");
  }
  if (!s1_.region_backed() || !s2_.region_backed()) {
    throw Error(ErrorKind::InvalidParameter, "partition needs region-backed strategies");
  }
}

Cell RegionPartition::cell_of(Point2 x) const {
  const bool c1 = s1_.cooperates(x);
  const bool c2 = s2_.cooperates(x);
  if (c1 && c2) return Cell::Delta;
  if (c2) return Cell::Omega1;
  if (c1) return Cell::Omega2;
  return Cell::Omega3;
}

Point2 RegionPartition::payoff_of(Cell c) {
  switch (c) {
    case Cell::Delta: return kMutualCooperation;
    case Cell::Omega1: return kTemptation;
    case Cell::Omega2: return kSucker;
    case Cell::Omega3: return kMutualDefection;
  }
  return kMutualDefection;
}

std::vector<Cell> RegionPartition::occupied_cells(std::size_t samples, std::uint64_t seed) const {
  std::array<bool, 4> seen{};
  for (Point2 x : sample_uniform(pd_polytope(), samples, seed)) {
    seen[static_cast<std::size_t>(cell_of(x))] = true;
  }
  std::vector<Cell> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<Cell>(i));
  }
  return out;
}

RegionPartition region_partition(const MemoryStrategy& s1, const MemoryStrategy& s2) {
  return RegionPartition(s1, s2);
}

}  // namespace memdyn
