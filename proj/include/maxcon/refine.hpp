#pragma once

#include <vector>

#include "maxcon/minimax.hpp"

namespace maxcon {

/// Greedy post-process: sweep the complement in ascending index order and
/// re-add every point that keeps the minimax value within epsilon;
/// repeat full sweeps until one adds nothing. The input set must already
/// be epsilon-feasible. Result is a superset of the input, feasible, and
/// maximal w.r.t. single-point additions.
std::vector<int> local_tree_refinement(const Dataset& dataset, const std::vector<int>& s0,
                                       SimplexSolver* workspace = nullptr);

}  // namespace maxcon
