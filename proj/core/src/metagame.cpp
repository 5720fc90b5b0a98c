#include "memdyn/metagame.hpp"

#include <algorithm>

#include "memdyn/error.hpp"

namespace memdyn {

std::string_view to_string(MetagameMode m) {
  return m == MetagameMode::Predicted ? "predicted" : "simulated";
}

MetagameMatrix build_matrix(std::size_t n, double eps1, double eps2, MetagameMode mode,
                            std::int64_t T, Point2 x0) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "grid size must be positive");
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw Error(ErrorKind::InvalidParameter, "eps must be positive");
  MetagameMatrix m;
  m.n = n;
  m.eps1 = eps1;
  m.eps2 = eps2;
  m.mode = mode;
  m.T = mode == MetagameMode::Simulated ? T : 0;
  m.x0 = x0;
  const BetaCoreImage core = beta_core_image(make_pd());
  for (std::size_t k = 0; k < n; ++k) {
    m.params.push_back((static_cast<double>(k) + 0.5) / static_cast<double>(n));
    m.grid.push_back(betacore_param(core, m.params.back()));
  }
  m.entries.assign(n, std::vector<MetagameEntry>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      MetagameEntry& e = m.entries[i][j];
      e.predicted = predicted_limit(m.grid[i], m.grid[j], eps1, eps2);
      if (mode == MetagameMode::Predicted) {
        e.payoff = e.predicted.limit;
        continue;
      }
      const Profile profile(MemoryStrategy::semicoop(Player::One, m.grid[i], eps1),
                            MemoryStrategy::semicoop(Player::Two, m.grid[j], eps2));
      const RunSummary s = run(profile, x0, 1, T);
      e.payoff = s.final;
      e.spread = s.tail.spread;
      e.flagged = s.tail.spread > kDefaultSpreadTol;
    }
  }
  return m;
}

std::vector<std::size_t> best_response(const MetagameMatrix& m, Player player,
                                       std::size_t opponent_index, double tol) {
  if (opponent_index >= m.n) throw Error(ErrorKind::InvalidParameter, "opponent index out of range");
  auto value = [&](std::size_t k) {
    return player == Player::One ? m.payoff(k, opponent_index).x1 : m.payoff(opponent_index, k).x2;
  };
  double best = value(0);
  for (std::size_t k = 1; k < m.n; ++k) best = std::max(best, value(k));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < m.n; ++k) {
    if (value(k) >= best - tol) out.push_back(k);
  }
  return out;
}

std::vector<CellIndex> pure_nash(const MetagameMatrix& m, double tol) {
  std::vector<CellIndex> out;
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      bool stable = true;
      for (std::size_t k = 0; k < m.n && stable; ++k) {
        stable = m.payoff(k, j).x1 <= m.payoff(i, j).x1 + tol &&
                 m.payoff(i, k).x2 <= m.payoff(i, j).x2 + tol;
      }
      if (stable) out.emplace_back(i, j);
    }
  }
  return out;
}

double swap_asymmetry(const MetagameMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      worst = std::max(worst, distance(m.payoff(m.n - 1 - j, m.n - 1 - i), swapped(m.payoff(i, j))));
    }
  }
  return worst;
}

}  // namespace memdyn
