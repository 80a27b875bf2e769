#include "maxcon/minimax.hpp"

#include <algorithm>
#include <cmath>

namespace maxcon {

std::vector<int> extract_basis(const MinimaxFit& fit, double basis_tol) {
    std::vector<int> basis;
    const double cut = fit.gamma - basis_tol * std::max(1.0, fit.gamma);
    for (int i = 0; i < fit.residuals.size(); ++i)
        if (fit.residuals(i) >= cut) basis.push_back(i);
    return basis;
}

MinimaxFit minimax_fit(const Dataset& dataset, const std::vector<int>& subset,
                       SimplexSolver* workspace) {
    if (subset.empty()) throw ContractViolation("minimax_fit: empty subset");
    const int d = dataset.d;
    const int n = static_cast<int>(subset.size());
    for (int idx : subset)
        if (idx < 0 || idx >= dataset.size())
            throw ContractViolation("minimax_fit: subset index out of range");

    // LP variables x = [theta_plus(d); theta_minus(d); gamma], all >= 0.
    // For each point:  a^T theta - gamma <= b  and  -a^T theta - gamma <= -b.
    Eigen::MatrixXd lhs(2 * n, 2 * d + 1);
    Eigen::VectorXd rhs(2 * n);
    for (int i = 0; i < n; ++i) {
        const DataPoint& p = dataset.points[subset[i]];
        if (p.a.size() != d) throw ContractViolation("minimax_fit: point dimension mismatch");
        lhs.row(2 * i).head(d) = p.a.transpose();
        lhs.row(2 * i).segment(d, d) = -p.a.transpose();
        lhs(2 * i, 2 * d) = -1.0;
        rhs(2 * i) = p.b;
        lhs.row(2 * i + 1) = -lhs.row(2 * i);
        lhs(2 * i + 1, 2 * d) = -1.0;
        rhs(2 * i + 1) = -p.b;
    }
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(2 * d + 1);
    cost(2 * d) = 1.0;

    SimplexSolver local;
    SimplexSolver& solver = workspace ? *workspace : local;
    const SimplexSolver::Solution sol = solver.solve(lhs, rhs, cost);

    Eigen::VectorXd theta = sol.x.head(d) - sol.x.segment(d, d);

    auto eval = [&](const Eigen::VectorXd& th, Eigen::VectorXd* out) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const DataPoint& p = dataset.points[subset[i]];
            const double r = std::abs(p.a.dot(th) - p.b);
            if (out) (*out)(i) = r;
            worst = std::max(worst, r);
        }
        return worst;
    };

    double gamma = eval(theta, nullptr);

    // Polish: re-solve the equality system on the tight set with the
    // observed residual signs. Keeps whichever theta has the smaller
    // true maximum, so the result can only improve.
    {
        std::vector<int> tight;
        const double cut = gamma - 1e-6 * std::max(1.0, gamma);
        for (int i = 0; i < n; ++i) {
            const DataPoint& p = dataset.points[subset[i]];
            if (std::abs(p.a.dot(theta) - p.b) >= cut) tight.push_back(i);
        }
        if (tight.size() >= 2) {
            Eigen::MatrixXd sys(static_cast<int>(tight.size()), d + 1);
            Eigen::VectorXd sys_rhs(static_cast<int>(tight.size()));
            for (std::size_t t = 0; t < tight.size(); ++t) {
                const DataPoint& p = dataset.points[subset[tight[t]]];
                const double s = (p.a.dot(theta) - p.b) >= 0.0 ? 1.0 : -1.0;
                sys.row(static_cast<int>(t)).head(d) = p.a.transpose();
                sys(static_cast<int>(t), d) = -s;
                sys_rhs(static_cast<int>(t)) = p.b;
            }
            Eigen::VectorXd cand = sys.colPivHouseholderQr().solve(sys_rhs);
            if (cand.allFinite()) {
                const Eigen::VectorXd theta2 = cand.head(d);
                const double gamma2 = eval(theta2, nullptr);
                if (gamma2 < gamma) {
                    theta = theta2;
                    gamma = gamma2;
                }
            }
        }
    }

    MinimaxFit fit;
    fit.theta.theta = theta;
    fit.residuals.resize(n);
    fit.gamma = eval(theta, &fit.residuals);
    fit.basis = extract_basis(fit);
    return fit;
}

double min_max_residual(const Dataset& dataset, const std::vector<int>& subset,
                        SimplexSolver* workspace) {
    return minimax_fit(dataset, subset, workspace).gamma;
}

}  // namespace maxcon
