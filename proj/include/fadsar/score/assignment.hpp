#pragma once

#include <vector>

namespace fadsar::score {

// Minimum-cost perfect assignment on a square cost matrix (Hungarian algorithm
// with potentials, O(n^3)). Returns the column assigned to each row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace fadsar::score
