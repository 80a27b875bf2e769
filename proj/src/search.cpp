#include "maxcon/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <deque>
#include <unordered_set>

namespace maxcon {

int RemovedSet::count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::vector<int> RemovedSet::surviving() const {
    std::vector<int> out;
    out.reserve(n_);
    for (int i = 0; i < n_; ++i)
        if (!test(i)) out.push_back(i);
    return out;
}

std::vector<int> RemovedSet::removed_indices() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

std::size_t RemovedSet::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : words_) {
        h ^= w;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

namespace {

struct RemovedSetHash {
    std::size_t operator()(const RemovedSet& s) const { return s.hash(); }
};

SearchResult result_from_state(const Dataset& dataset, const SearchState& state) {
    SearchResult r;
    r.consensus_indices = state.removed.surviving();
    r.removals = state.depth;
    r.theta = state.fit.theta;
    (void)dataset;
    return r;
}

}  // namespace

SearchState initial_state(const Dataset& dataset, SimplexSolver* workspace) {
    dataset.validate();
    SearchState s;
    s.removed = RemovedSet(dataset.size());
    std::vector<int> all(dataset.size());
    for (int i = 0; i < dataset.size(); ++i) all[i] = i;
    s.fit = minimax_fit(dataset, all, workspace);
    s.depth = 0;
    return s;
}

std::vector<int> actions(const SearchState& state) {
    const std::vector<int> alive = state.removed.surviving();
    std::vector<int> acts;
    acts.reserve(state.fit.basis.size());
    for (int pos : state.fit.basis) acts.push_back(alive[pos]);
    return acts;
}

SearchState apply_action(const Dataset& dataset, const SearchState& state, int j,
                         SimplexSolver* workspace) {
    const std::vector<int> acts = actions(state);
    if (std::find(acts.begin(), acts.end(), j) == acts.end())
        throw ContractViolation("apply_action: index is not in the basis");
    SearchState child;
    child.removed = state.removed;
    child.removed.set(j);
    child.depth = state.depth + 1;
    child.fit = minimax_fit(dataset, child.removed.surviving(), workspace);
    return child;
}

SearchResult optimal_search(const Dataset& dataset, long node_budget) {
    const auto t0 = std::chrono::steady_clock::now();
    SimplexSolver ws;
    long solves = 0;

    auto finish = [&](const SearchState& goal) {
        SearchResult r = result_from_state(dataset, goal);
        r.nodes_expanded = solves;
        r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    SearchState root = initial_state(dataset, &ws);
    ++solves;

    std::deque<SearchState> queue;
    std::unordered_set<RemovedSet, RemovedSetHash> visited;
    queue.push_back(std::move(root));
    visited.insert(queue.back().removed);

    const SearchState* best = nullptr;  // lowest gamma seen (budget fallback)
    double best_gamma = std::numeric_limits<double>::infinity();
    SearchState best_state;

    while (!queue.empty()) {
        SearchState state = std::move(queue.front());
        queue.pop_front();
        if (is_goal(state, dataset.epsilon)) return finish(state);
        if (state.fit.gamma < best_gamma) {
            best_gamma = state.fit.gamma;
            best_state = state;
            best = &best_state;
        }
        for (int j : actions(state)) {
            RemovedSet child_removed = state.removed;
            child_removed.set(j);
            if (visited.contains(child_removed)) continue;
            if (solves >= node_budget) {
                SearchResult partial = best ? result_from_state(dataset, best_state)
                                            : result_from_state(dataset, state);
                partial.nodes_expanded = solves;
                partial.wall_time_s =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                throw BudgetExhausted("optimal_search: node budget exhausted", partial);
            }
            SearchState child;
            child.removed = child_removed;
            child.depth = state.depth + 1;
            child.fit = minimax_fit(dataset, child_removed.surviving(), &ws);
            ++solves;
            visited.insert(child_removed);
            queue.push_back(std::move(child));
        }
    }
    throw SolverError("optimal_search: exhausted the lattice without a goal");
}

SearchResult random_rollout(const Dataset& dataset, std::uint64_t rng_seed) {
    const auto t0 = std::chrono::steady_clock::now();
    SimplexSolver ws;
    Rng rng(rng_seed);
    SearchState state = initial_state(dataset, &ws);
    long solves = 1;
    while (!is_goal(state, dataset.epsilon)) {
        const std::vector<int> acts = actions(state);
        const int j = acts[rng.uniform_int(static_cast<int>(acts.size()))];
        state = apply_action(dataset, state, j, &ws);
        ++solves;
    }
    SearchResult r = result_from_state(dataset, state);
    r.nodes_expanded = solves;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace maxcon
