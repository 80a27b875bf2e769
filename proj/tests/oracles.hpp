// Independent brute-force oracles used to freeze expected values. These
// deliberately avoid the library's LP / search code paths they check.
#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "maxcon/minimax.hpp"
#include "maxcon/model.hpp"

namespace maxcon::testing {

/// Exact minimax value by candidate enumeration: every (d+1)-subset with
/// every sign pattern yields an equality system whose theta is a
/// candidate; the optimum is the smallest max-residual among candidates.
/// Subsets of size <= d are fit exactly (least squares).
inline double brute_force_minimax(const Dataset& dataset, const std::vector<int>& subset,
                                  Eigen::VectorXd* theta_out = nullptr) {
    const int d = dataset.d;
    const int n = static_cast<int>(subset.size());

    auto max_residual = [&](const Eigen::VectorXd& theta) {
        double worst = 0.0;
        for (int idx : subset)
            worst = std::max(worst,
                             std::abs(dataset.points[idx].a.dot(theta) - dataset.points[idx].b));
        return worst;
    };

    if (n <= d) {
        Eigen::MatrixXd a(n, d);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            a.row(i) = dataset.points[subset[i]].a.transpose();
            b(i) = dataset.points[subset[i]].b;
        }
        const Eigen::VectorXd theta = a.completeOrthogonalDecomposition().solve(b);
        if (theta_out) *theta_out = theta;
        return max_residual(theta);
    }

    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_theta;
    std::vector<int> pick(d + 1);
    // Enumerate (d+1)-combinations of the subset.
    std::vector<int> comb(d + 1);
    for (int i = 0; i <= d; ++i) comb[i] = i;
    for (;;) {
        for (unsigned signs = 0; signs < (1u << d); ++signs) {
            // First sign fixed to +1 (global sign flip is redundant).
            Eigen::MatrixXd sys(d + 1, d + 1);
            Eigen::VectorXd rhs(d + 1);
            for (int r = 0; r <= d; ++r) {
                const DataPoint& p = dataset.points[subset[comb[r]]];
                const double s = (r == 0 || !((signs >> (r - 1)) & 1)) ? 1.0 : -1.0;
                sys.row(r).head(d) = p.a.transpose();
                sys(r, d) = -s;
                rhs(r) = p.b;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
            if (!lu.isInvertible()) continue;
            const Eigen::VectorXd sol = lu.solve(rhs);
            const Eigen::VectorXd theta = sol.head(d);
            const double value = max_residual(theta);
            if (value < best) {
                best = value;
                best_theta = theta;
            }
        }
        // next combination
        int i = d;
        while (i >= 0 && comb[i] == n - (d + 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j <= d; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (theta_out) *theta_out = best_theta;
    return best;
}

/// Exhaustive maximum consensus: test subsets from size N downwards with
/// the minimax feasibility check, return the first feasible size.
inline int exhaustive_max_consensus(const Dataset& dataset) {
    const int n = dataset.size();
    for (int size = n; size >= dataset.d; --size) {
        // Enumerate all subsets of the given size.
        std::vector<int> comb(size);
        for (int i = 0; i < size; ++i) comb[i] = i;
        for (;;) {
            if (min_max_residual(dataset, comb) <= dataset.epsilon) return size;
            int i = size - 1;
            while (i >= 0 && comb[i] == n - size + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return 0;
}

}  // namespace maxcon::testing
