#include "maxcon/refine.hpp"

#include <algorithm>

namespace maxcon {

std::vector<int> local_tree_refinement(const Dataset& dataset, const std::vector<int>& s0,
                                       SimplexSolver* workspace) {
    SimplexSolver local;
    SimplexSolver& ws = workspace ? *workspace : local;

    std::vector<int> current = s0;
    std::sort(current.begin(), current.end());
    if (min_max_residual(dataset, current, &ws) > dataset.epsilon)
        throw ContractViolation("local_tree_refinement: initial set is not epsilon-feasible");

    std::vector<bool> in_set(dataset.size(), false);
    for (int i : current) in_set[i] = true;

    bool improved = true;
    while (improved) {
        improved = false;
        // Snapshot of the complement for this sweep, ascending.
        std::vector<int> complement;
        for (int i = 0; i < dataset.size(); ++i)
            if (!in_set[i]) complement.push_back(i);
        for (int candidate : complement) {
            std::vector<int> trial = current;
            trial.insert(std::lower_bound(trial.begin(), trial.end(), candidate), candidate);
            if (min_max_residual(dataset, trial, &ws) <= dataset.epsilon) {
                current = std::move(trial);
                in_set[candidate] = true;
                improved = true;
            }
        }
    }
    return current;
}

}  // namespace maxcon
