#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "memdyn/dynamics.hpp"

namespace memdyn {

enum class MetagameMode { Predicted, Simulated };
std::string_view to_string(MetagameMode m);

struct MetagameEntry {
  Point2 payoff;            // limit payoff pair of the cell
  LimitPrediction predicted;
  double spread = 0.0;      // tail spread of the run (simulated mode)
  bool flagged = false;     // run did not settle within the spread tolerance
};

/// Induced game whose actions are beta-core anchors: row i is player 1's
/// anchor grid[i], column j is player 2's anchor grid[j].
struct MetagameMatrix {
  std::size_t n = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  MetagameMode mode = MetagameMode::Predicted;
  std::int64_t T = 0;
  Point2 x0;
  std::vector<double> params;  // s = (k + 0.5) / n
  std::vector<Point2> grid;
  std::vector<std::vector<MetagameEntry>> entries;

  const Point2& payoff(std::size_t i, std::size_t j) const { return entries[i][j].payoff; }
};

inline constexpr std::int64_t kDefaultHorizon = 1'000'000;
inline constexpr Point2 kMetagameStart{1.5, 1.5};

MetagameMatrix build_matrix(std::size_t n, double eps1, double eps2, MetagameMode mode,
                            std::int64_t T = kDefaultHorizon, Point2 x0 = kMetagameStart);

using CellIndex = std::pair<std::size_t, std::size_t>;

// Cells where no unilateral switch of anchor raises the mover's payoff by more than tol.
std::vector<CellIndex> pure_nash(const MetagameMatrix& m, double tol = 1e-9);

// Anchors of `player` maximizing its payoff against the opponent's anchor
// `opponent_index`, ties within tol included.
std::vector<std::size_t> best_response(const MetagameMatrix& m, Player player,
                                       std::size_t opponent_index, double tol = 1e-9);

// Largest deviation from payoff(n-1-j, n-1-i) == swapped(payoff(i, j)).
double swap_asymmetry(const MetagameMatrix& m);

}  // namespace memdyn
