#pragma once

#include <Eigen/Dense>
#include <vector>

#include "maxcon/model.hpp"
#include "maxcon/simplex.hpp"

namespace maxcon {

/// Relative tolerance used to decide which residuals attain the minimax
/// value (the basis is an exact-equality set in exact arithmetic;
/// floating point needs a band).
constexpr double kBasisTol = 1e-7;

/// Solution of the L-infinity (Chebyshev) fit over a subset: the model
/// minimizing the maximum residual, its value gamma, the residual vector
/// over the subset, and the indices attaining gamma.
struct MinimaxFit {
    ModelParams theta;
    double gamma = 0.0;
    std::vector<int> basis;       // positions into `subset`, sorted ascending
    Eigen::VectorXd residuals;    // one per subset member, in subset order
};

/// {i : residuals[i] >= gamma - basis_tol * max(1, gamma)}, sorted.
std::vector<int> extract_basis(const MinimaxFit& fit, double basis_tol = kBasisTol);

/// Exact minimax fit  min_theta max_{i in subset} |a_i^T theta - b_i|
/// via a dense LP. Deterministic (Bland pivots). `subset` holds indices
/// into dataset.points and must be non-empty.
MinimaxFit minimax_fit(const Dataset& dataset, const std::vector<int>& subset,
                       SimplexSolver* workspace = nullptr);

/// Convenience wrapper returning only gamma.
double min_max_residual(const Dataset& dataset, const std::vector<int>& subset,
                        SimplexSolver* workspace = nullptr);

}  // namespace maxcon
