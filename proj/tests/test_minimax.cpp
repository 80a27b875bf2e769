#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "maxcon/minimax.hpp"
#include "oracles.hpp"

using namespace maxcon;
using namespace maxcon::testing;

TEST_CASE("3-point instance: known fit") {
    const Dataset ds = derived_three_point();
    const MinimaxFit fit = minimax_fit(ds, all_indices(ds));
    CHECK(fit.gamma == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit.theta.theta(0) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(fit.theta.theta(1) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(fit.basis == std::vector<int>{0, 1, 2});
    CHECK(fit.residuals.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(fit.residuals(i) == doctest::Approx(0.5).epsilon(1e-8));

    // Cross-check the value on a coarse theta grid: nothing beats gamma.
    for (double t1 = -2.0; t1 <= 2.0; t1 += 0.05) {
        for (double t2 = -2.0; t2 <= 2.0; t2 += 0.05) {
            ModelParams th;
            th.theta.resize(2);
            th.theta << t1, t2;
            double worst = 0.0;
            for (const DataPoint& p : ds.points) worst = std::max(worst, residual(p, th));
            CHECK(worst >= fit.gamma - 1e-9);
        }
    }
}

TEST_CASE("subsets of size <= d fit exactly") {
    const Dataset ds = planted_four_plus_one();
    CHECK(min_max_residual(ds, {0, 3}) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(min_max_residual(ds, {2}) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("empty subset is rejected") {
    const Dataset ds = derived_three_point();
    CHECK_THROWS_AS(minimax_fit(ds, {}), ContractViolation);
}

TEST_CASE("matches the brute-force oracle on random instances") {
    SimplexSolver ws;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const ModelKind kind = (seed % 2 == 0) ? ModelKind::Line2d : ModelKind::Plane3d;
        const Dataset ds = gen(kind, 9, 0.3, 1000 + seed);
        const MinimaxFit fit = minimax_fit(ds, all_indices(ds), &ws);
        const double oracle = brute_force_minimax(ds, all_indices(ds));
        CHECK(fit.gamma == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("gamma is an attained max and residuals are consistent") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset ds = gen(ModelKind::Line2d, 25, 0.2, 2000 + seed);
        const MinimaxFit fit = minimax_fit(ds, all_indices(ds));
        double worst = 0.0;
        for (int i = 0; i < ds.size(); ++i) {
            CHECK(fit.residuals(i) == doctest::Approx(residual(ds.points[i], fit.theta)));
            worst = std::max(worst, fit.residuals(i));
        }
        CHECK(fit.gamma == doctest::Approx(worst));
    }
}

TEST_CASE("basis: attains gamma, generic size <= d+1, removal strictly shrinks gamma") {
    SimplexSolver ws;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const ModelKind kind = (seed % 2 == 0) ? ModelKind::Line2d : ModelKind::Plane3d;
        const Dataset ds = gen(kind, 15, 0.25, 3000 + seed);
        const std::vector<int> full = all_indices(ds);
        const MinimaxFit fit = minimax_fit(ds, full, &ws);
        REQUIRE(!fit.basis.empty());
        CHECK(static_cast<int>(fit.basis.size()) <= ds.d + 1);
        CHECK(std::is_sorted(fit.basis.begin(), fit.basis.end()));
        for (int pos : fit.basis)
            CHECK(fit.residuals(pos) >= fit.gamma - kBasisTol * std::max(1.0, fit.gamma));
        for (int pos : fit.basis) {
            std::vector<int> rest;
            for (int i : full)
                if (i != full[pos]) rest.push_back(i);
            CHECK(min_max_residual(ds, rest, &ws) < fit.gamma - 1e-10);
        }
        // Removing a non-basis point leaves gamma unchanged.
        for (int i : full) {
            if (std::binary_search(fit.basis.begin(), fit.basis.end(), i)) continue;
            std::vector<int> rest;
            for (int j : full)
                if (j != i) rest.push_back(j);
            CHECK(min_max_residual(ds, rest, &ws) == doctest::Approx(fit.gamma).epsilon(1e-9));
            break;  // one per instance keeps this cheap
        }
    }
}

TEST_CASE("subset order does not change gamma") {
    const Dataset ds = gen(ModelKind::Line2d, 12, 0.2, 42);
    std::vector<int> idx = all_indices(ds);
    const double forward = min_max_residual(ds, idx);
    std::reverse(idx.begin(), idx.end());
    CHECK(min_max_residual(ds, idx) == doctest::Approx(forward).epsilon(1e-10));
}

TEST_CASE("gamma is monotone under subset growth") {
    const Dataset ds = gen(ModelKind::Line2d, 20, 0.3, 7);
    std::vector<int> subset;
    double previous = 0.0;
    for (int i = 0; i < ds.size(); ++i) {
        subset.push_back(i);
        const double g = min_max_residual(ds, subset);
        CHECK(g >= previous - 1e-10);
        previous = g;
    }
}

TEST_CASE("linearized fundamental instances solve too") {
    const Dataset ds = gen(ModelKind::FundamentalLin, 20, 0.0, 11);
    // Outlier-free data admits an exact fit.
    CHECK(min_max_residual(ds, all_indices(ds)) == doctest::Approx(0.0).epsilon(1e-7));
}
