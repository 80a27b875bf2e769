#pragma once

#include <cstdint>
#include <vector>

#include "maxcon/common.hpp"
#include "maxcon/minimax.hpp"

namespace maxcon {

/// Fixed-size bitset over point indices with a hash, used as the
/// duplicate-detection key for removed sets.
class RemovedSet {
public:
    RemovedSet() = default;
    explicit RemovedSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    int count() const;
    int size() const { return n_; }

    /// Indices NOT removed, ascending.
    std::vector<int> surviving() const;
    /// Indices removed, ascending.
    std::vector<int> removed_indices() const;

    bool operator==(const RemovedSet& o) const { return n_ == o.n_ && words_ == o.words_; }
    std::size_t hash() const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// A node of the outlier-removal tree: the removed set plus the minimax
/// fit of the surviving subset.
struct SearchState {
    RemovedSet removed;
    MinimaxFit fit;   // over removed.surviving(), in ascending-index order
    int depth = 0;    // == removed.count()
};

struct SearchResult {
    std::vector<int> consensus_indices;
    int removals = 0;
    ModelParams theta;
    long nodes_expanded = 0;  // number of minimax solves performed
    double wall_time_s = 0.0;
};

/// Thrown by optimal_search when the node budget runs out; carries the
/// best (lowest gamma) frontier state seen so far.
struct BudgetExhausted : std::runtime_error {
    BudgetExhausted(std::string msg, SearchResult best_so_far)
        : std::runtime_error(std::move(msg)), best(std::move(best_so_far)) {}
    SearchResult best;
};

SearchState initial_state(const Dataset& dataset, SimplexSolver* workspace = nullptr);

/// Available actions: the basis of the current fit, as global point
/// indices (removing any of them strictly decreases gamma).
std::vector<int> actions(const SearchState& state);

SearchState apply_action(const Dataset& dataset, const SearchState& state, int j,
                         SimplexSolver* workspace = nullptr);

inline bool is_goal(const SearchState& state, double epsilon) {
    return state.fit.gamma <= epsilon;
}

/// Exact minimum-removal search: breadth-first over the removal lattice
/// with duplicate detection on the removed set. Children are generated
/// in ascending removed-index order, so the result is deterministic.
SearchResult optimal_search(const Dataset& dataset, long node_budget = 2'000'000);

/// Random baseline: uniformly remove a basis point until the goal.
SearchResult random_rollout(const Dataset& dataset, std::uint64_t rng_seed);

}  // namespace maxcon
