#pragma once

#include <Eigen/Dense>

#include "maxcon/common.hpp"

namespace maxcon {

/// Dense two-phase simplex for
///     min c^T x  s.t.  A x <= b,  x >= 0,
/// with Bland's rule throughout (anti-cycling and deterministic pivots).
/// Reusable across solves; buffers grow on demand.
class SimplexSolver {
public:
    struct Solution {
        Eigen::VectorXd x;
        double objective = 0.0;
    };

    /// Throws SolverError if the problem is infeasible, unbounded, or the
    /// iteration guard trips.
    Solution solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                   const Eigen::VectorXd& c);

private:
    Eigen::MatrixXd tableau_;
};

}  // namespace maxcon
