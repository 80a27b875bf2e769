#include "maxcon/baselines.hpp"

#include <chrono>
#include <iostream>

namespace maxcon {

namespace {

constexpr double kConditionLimit = 1e10;

/// Sample `d` distinct indices from [0, n), deterministic in rng.
void sample_indices(int n, int d, Rng& rng, std::vector<int>& out) {
    out.clear();
    while (static_cast<int>(out.size()) < d) {
        const int cand = rng.uniform_int(n);
        bool dup = false;
        for (int x : out)
            if (x == cand) { dup = true; break; }
        if (!dup) out.push_back(cand);
    }
}

/// Least-squares theta over the given indices; empty optional when the
/// system is (near-)singular.
std::optional<Eigen::VectorXd> solve_theta(const Dataset& dataset, const std::vector<int>& idx) {
    const int d = dataset.d;
    Eigen::MatrixXd a(static_cast<int>(idx.size()), d);
    Eigen::VectorXd b(static_cast<int>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
        a.row(static_cast<int>(r)) = dataset.points[idx[r]].a.transpose();
        b(static_cast<int>(r)) = dataset.points[idx[r]].b;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > kConditionLimit)
        return std::nullopt;
    return svd.solve(b);
}

SearchResult run(const Dataset& dataset, const RansacConfig& config, bool local_opt) {
    dataset.validate();
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int n = dataset.size();
    Rng rng(config.seed);

    int best_count = 0;
    Eigen::VectorXd best_theta;
    std::vector<bool> best_mask;
    std::vector<int> sample;
    long iters = 0;

    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    auto within_budget = [&] {
        if (config.max_iterations > 0 && iters >= config.max_iterations) return false;
        if (config.max_seconds > 0.0 && elapsed() >= config.max_seconds) return false;
        return true;
    };

    while (within_budget()) {
        ++iters;
        sample_indices(n, dataset.d, rng, sample);
        const auto theta = solve_theta(dataset, sample);
        if (!theta) continue;
        ConsensusResult score = consensus(dataset, {*theta});
        if (score.count > best_count) {
            best_count = score.count;
            best_theta = *theta;
            best_mask = score.inlier_mask;

            if (local_opt) {
                std::vector<int> inliers;
                for (int i = 0; i < n; ++i)
                    if (best_mask[i]) inliers.push_back(i);
                for (int it = 0; it < config.lo_inner_iterations && !inliers.empty(); ++it) {
                    const auto refit = solve_theta(dataset, inliers);
                    if (!refit) break;
                    ConsensusResult rescore = consensus(dataset, {*refit});
                    if (rescore.count <= best_count) break;
                    best_count = rescore.count;
                    best_theta = *refit;
                    best_mask = rescore.inlier_mask;
                    inliers.clear();
                    for (int i = 0; i < n; ++i)
                        if (best_mask[i]) inliers.push_back(i);
                }
            }
        }
    }

    SearchResult result;
    result.nodes_expanded = iters;
    result.wall_time_s = elapsed();
    if (best_count == 0) {
        std::cerr << "ransac: no valid hypothesis within the budget\n";
        result.removals = n;
        return result;
    }
    result.theta.theta = best_theta;
    for (int i = 0; i < n; ++i)
        if (best_mask[i]) result.consensus_indices.push_back(i);
    result.removals = n - best_count;
    return result;
}

}  // namespace

void RansacConfig::validate() const {
    if (max_iterations <= 0 && max_seconds <= 0.0)
        throw ContractViolation("RansacConfig: need a positive iteration or time budget");
    if (lo_inner_iterations < 0)
        throw ContractViolation("RansacConfig: negative lo_inner_iterations");
}

SearchResult ransac(const Dataset& dataset, const RansacConfig& config) {
    return run(dataset, config, false);
}

SearchResult lo_ransac(const Dataset& dataset, const RansacConfig& config) {
    return run(dataset, config, config.lo_inner_iterations > 0);
}

}  // namespace maxcon
