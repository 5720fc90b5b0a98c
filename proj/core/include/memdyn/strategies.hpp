#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "memdyn/geometry.hpp"

namespace memdyn {

enum class Action : std::uint8_t { C = 0, D = 1 };
enum class Player : std::uint8_t { One = 1, Two = 2 };

char to_char(Action a);
int index_of(Player p);  // 0 or 1
Player opponent(Player p);

enum class PlayerType { Egoist, Altruist, Balanced };
std::string_view to_string(PlayerType t);

// Egoist iff the anchor favours the classified player, altruist iff it
// favours the opponent.
PlayerType classify_player(Point2 v, Player player);

/// Closed cooperation region K_i(v, eps) of a semi-cooperative player:
/// the eps-offset of the base half-plane through (1,1) and v, cut by the
/// player's box constraints. Inside the box the Euclidean eps-neighborhood of
/// T_i(v) and the offset half-plane coincide, so membership is a pure
/// half-plane test.
struct CooperationRegion {
  HalfPlane base;
  double eps = 0.0;
  HalfPlane offset;
  std::vector<HalfPlane> box;

  bool contains(Point2 x, double tol = kEta) const;
  ConvexPolygon polygon(const ConvexPolygon& domain) const;
};

CooperationRegion semicoop_region(Player player, Point2 v, double eps);

/// Memory strategy: a total map from the payoff polytope to {C, D}.
class MemoryStrategy {
 public:
  struct Good {
    double eps;
  };
  struct SemiCooperative {
    Point2 anchor;
    double eps;
    CooperationRegion region;
    bool off_core;
  };
  struct Simple {
    double p, q, r;
  };
  struct Constant {
    Action action;
  };
  struct Custom {
    std::function<bool(Point2)> cooperates;
    std::string name;
  };
  using Kind = std::variant<Good, SemiCooperative, Simple, Constant, Custom>;

  static MemoryStrategy good(Player player, double eps);
  static MemoryStrategy semicoop(Player player, Point2 v, double eps);
  static MemoryStrategy simple(Player player, double p, double q, double r);
  static MemoryStrategy constant(Player player, Action action);
  static MemoryStrategy custom(Player player, std::function<bool(Point2)> cooperates,
                               std::string name);

  Player player() const { return player_; }
  const Kind& kind() const { return kind_; }

  bool cooperates(Point2 x) const;
  Action operator()(Point2 x) const { return cooperates(x) ? Action::C : Action::D; }

  // Checked evaluation: throws OutOfDomain when x is farther than kEta from `domain`.
  Action evaluate(Point2 x, const ConvexPolygon& domain) const;

  std::optional<Point2> anchor() const;
  std::optional<double> eps() const;
  // Region-backed strategies can be partitioned exactly; custom ones cannot.
  bool region_backed() const { return !std::holds_alternative<Custom>(kind_); }
  // Non-fatal construction diagnostics (e.g. anchor off the beta-core).
  const std::vector<std::string>& warnings() const { return warnings_; }
  // Canonical strategy string (`good:eps=0.1`, ...); custom strategies return their name.
  std::string describe() const;

 private:
  MemoryStrategy(Player player, Kind kind) : player_(player), kind_(std::move(kind)) {}

  Player player_;
  Kind kind_;
  std::vector<std::string> warnings_;
};

// Closure of the set where `s` cooperates, clipped to `domain`; nullopt for
// custom strategies. Used for plotting region boundaries.
std::optional<ConvexPolygon> cooperation_polygon(const MemoryStrategy& s, const ConvexPolygon& domain);

// Akin's sign constraints for L(x) = p*x1 + q*x2 + r from player 1's side:
// L(1,1), L(3,0) <= 0 <= L(2,2), L(0,3), with (p, q) != (0, 0).
bool simple_constraints_hold(double p, double q, double r);

/// Cells of the payoff polytope induced by a region-backed profile.
enum class Cell : std::uint8_t {
  Delta,   // both cooperate: (2,2)
  Omega1,  // only player 2 cooperates: (3,0)
  Omega2,  // only player 1 cooperates: (0,3)
  Omega3,  // both defect: (1,1)
};
std::string_view to_string(Cell c);

class RegionPartition {
 public:
  RegionPartition(MemoryStrategy s1, MemoryStrategy s2);

  Cell cell_of(Point2 x) const;
  static Point2 payoff_of(Cell c);
  const MemoryStrategy& first() const { return s1_; }
  const MemoryStrategy& second() const { return s2_; }

  // Cells hit by a deterministic sample of the polytope.
  std::vector<Cell> occupied_cells(std::size_t samples, std::uint64_t seed) const;

 private:
  MemoryStrategy s1_;
  MemoryStrategy s2_;
};

RegionPartition region_partition(const MemoryStrategy& s1, const MemoryStrategy& s2);

}  // namespace memdyn
