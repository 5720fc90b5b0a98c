#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace memdyn::detail {

double lower_value_lp(const std::vector<std::vector<double>>& a) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : a) {
    for (double v : row) lo = std::min(lo, v);
  }
  const double shift = 1.0 - lo;

  // Tableau rows: m constraints over n structural + m slack columns, rhs last.
  const std::size_t width = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j] + shift;
    t[i][n + i] = 1.0;
    t[i][width - 1] = 1.0;
    basis[i] = n + i;
  }
  // Objective row stores reduced costs of max sum(y).
  for (std::size_t j = 0; j < n; ++j) t[m][j] = 1.0;

  constexpr double kPivotTol = 1e-12;
  for (std::size_t iter = 0; iter < 10000; ++iter) {
    // Bland's rule guarantees termination under degeneracy.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t[m][j] > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kPivotTol) {
        const double ratio = t[i][width - 1] / t[i][enter];
        if (ratio < best - kPivotTol || (std::abs(ratio - best) <= kPivotTol && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      throw std::logic_error("minmax LP unbounded; shifted payoff matrix must be positive");
    }
    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  // The objective row's rhs holds -sum(y*).
  const double total = -t[m][width - 1];
  return 1.0 / total - shift;
}

double lower_value_two_columns(const std::vector<std::vector<double>>& a) {
  if (a.front().size() == 1) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& row : a) best = std::max(best, row[0]);
    return best;
  }
  // Row i as a function of the weight q on column 0: a[i][1] + q*(a[i][0] - a[i][1]).
  auto envelope = [&](double q) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& row : a) best = std::max(best, row[1] + q * (row[0] - row[1]));
    return best;
  };
  std::vector<double> candidates{0.0, 1.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = i + 1; k < a.size(); ++k) {
      const double si = a[i][0] - a[i][1];
      const double sk = a[k][0] - a[k][1];
      if (si == sk) continue;
      const double q = (a[k][1] - a[i][1]) / (si - sk);
      if (q > 0.0 && q < 1.0) candidates.push_back(q);
    }
  }
  double value = std::numeric_limits<double>::infinity();
  for (double q : candidates) value = std::min(value, envelope(q));
  return value;
}

}  // namespace memdyn::detail
