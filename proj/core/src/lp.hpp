#pragma once

#include <vector>

namespace memdyn::detail {

// Lower value min_q max_i (A q)_i of the matrix game where the row player
// maximizes over pure rows and the column player mixes over columns.
// Solved as max 1'y s.t. A'y <= 1, y >= 0 on a positively shifted A'.
double lower_value_lp(const std::vector<std::vector<double>>& a);

// Exact evaluation for matrices with one or two columns: the minimum of the
// upper envelope is attained at q in {0, 1} or at a pairwise crossing.
double lower_value_two_columns(const std::vector<std::vector<double>>& a);

}  // namespace memdyn::detail
