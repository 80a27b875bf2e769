#include "maxcon/simplex.hpp"

#include <cmath>
#include <vector>

namespace maxcon {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

}  // namespace

SimplexSolver::Solution SimplexSolver::solve(const Eigen::MatrixXd& a,
                                             const Eigen::VectorXd& b,
                                             const Eigen::VectorXd& c) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (b.size() != m || c.size() != n)
        throw ContractViolation("SimplexSolver: inconsistent problem dimensions");

    // Columns: [structural n | slack m | artificial (<= m) | rhs].
    // Rows with negative rhs are negated and given an artificial variable.
    std::vector<int> art_rows;
    for (int r = 0; r < m; ++r)
        if (b(r) < 0.0) art_rows.push_back(r);
    const int n_art = static_cast<int>(art_rows.size());
    const int cols = n + m + n_art + 1;
    const int obj = m;  // objective row index

    tableau_.setZero(m + 1, cols);
    std::vector<int> basis(m, -1);

    for (int r = 0; r < m; ++r) {
        const double sign = b(r) < 0.0 ? -1.0 : 1.0;
        tableau_.row(r).head(n) = sign * a.row(r);
        tableau_(r, n + r) = sign;  // slack
        tableau_(r, cols - 1) = sign * b(r);
        basis[r] = n + r;
    }
    for (int i = 0; i < n_art; ++i) {
        const int r = art_rows[i];
        tableau_(r, n + m + i) = 1.0;
        basis[r] = n + m + i;
    }

    const long max_iters = 1000L * (m + n) + 20000L;
    long iters = 0;

    auto pivot = [&](int row, int col) {
        tableau_.row(row) /= tableau_(row, col);
        for (int r = 0; r <= m; ++r) {
            if (r == row) continue;
            const double f = tableau_(r, col);
            if (f != 0.0) tableau_.row(r) -= f * tableau_.row(row);
        }
        basis[row] = col;
    };

    // Runs Bland-rule pivots on the current objective row until optimal.
    // `active` is the number of eligible (non-artificial in phase 2) columns.
    auto iterate = [&](int active) {
        for (;;) {
            if (++iters > max_iters)
                throw SolverError("simplex: iteration guard exceeded");
            int enter = -1;
            for (int j = 0; j < active; ++j) {
                if (tableau_(obj, j) < -kPivotTol) { enter = j; break; }
            }
            if (enter < 0) return;
            int leave = -1;
            double best_ratio = 0.0;
            for (int r = 0; r < m; ++r) {
                const double arj = tableau_(r, enter);
                if (arj > kPivotTol) {
                    const double ratio = tableau_(r, cols - 1) / arj;
                    if (leave < 0 || ratio < best_ratio - kPivotTol ||
                        (std::abs(ratio - best_ratio) <= kPivotTol && basis[r] < basis[leave])) {
                        leave = r;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) throw SolverError("simplex: problem is unbounded");
            pivot(leave, enter);
        }
    };

    if (n_art > 0) {
        // Phase 1: minimize the sum of artificials. Their reduced costs
        // start at 1 and must be priced out against the initial basis.
        for (int i = 0; i < n_art; ++i) tableau_(obj, n + m + i) = 1.0;
        for (int r : art_rows) tableau_.row(obj) -= tableau_.row(r);
        iterate(cols - 1);
        if (-tableau_(obj, cols - 1) > kFeasTol)
            throw SolverError("simplex: infeasible problem");
        // Drive any residual artificial out of the basis (degenerate pivot),
        // or drop the row as redundant.
        for (int r = 0; r < m; ++r) {
            if (basis[r] < n + m) continue;
            int col = -1;
            for (int j = 0; j < n + m; ++j)
                if (std::abs(tableau_(r, j)) > kPivotTol) { col = j; break; }
            if (col >= 0) {
                pivot(r, col);
            } else {
                tableau_.row(r).setZero();
                basis[r] = -1;
            }
        }
    }

    // Phase 2 objective: price c against the current basis.
    tableau_.row(obj).setZero();
    tableau_.row(obj).head(n) = c.transpose();
    for (int r = 0; r < m; ++r) {
        if (basis[r] >= 0 && basis[r] < n && std::abs(c(basis[r])) > 0.0)
            tableau_.row(obj) -= c(basis[r]) * tableau_.row(r);
    }
    iterate(n + m);

    Solution sol;
    sol.x.setZero(n);
    for (int r = 0; r < m; ++r)
        if (basis[r] >= 0 && basis[r] < n) sol.x(basis[r]) = tableau_(r, cols - 1);
    sol.objective = c.dot(sol.x);
    return sol;
}

}  // namespace maxcon
