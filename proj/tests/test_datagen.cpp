#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "maxcon/datagen.hpp"
#include "maxcon/minimax.hpp"

using namespace maxcon;
using namespace maxcon::testing;

TEST_CASE("spec validation") {
    GenSpec spec;
    spec.n = 20;
    spec.outlier_rate = 0.25;
    CHECK(spec.num_outliers() == 5);
    CHECK_NOTHROW(spec.validate());

    spec.outlier_rate = -0.1;
    CHECK_THROWS_AS(spec.validate(), ContractViolation);
    spec.outlier_rate = 1.0;
    CHECK_THROWS_AS(spec.validate(), ContractViolation);

    // Too few surviving inliers to pin the model down.
    spec.n = 3;
    spec.outlier_rate = 0.66;
    CHECK_THROWS_AS(spec.validate(), ContractViolation);
}

TEST_CASE("generation is deterministic in the seed") {
    for (ModelKind kind : {ModelKind::Line2d, ModelKind::Plane3d, ModelKind::FundamentalLin}) {
        const Dataset a = gen(kind, 20, 0.2, 31);
        const Dataset b = gen(kind, 20, 0.2, 31);
        const Dataset c = gen(kind, 20, 0.2, 32);
        REQUIRE(a.size() == b.size());
        bool all_equal = true;
        bool any_differs_from_c = false;
        for (int i = 0; i < a.size(); ++i) {
            all_equal = all_equal && a.points[i].a == b.points[i].a && a.points[i].b == b.points[i].b;
            any_differs_from_c =
                any_differs_from_c || a.points[i].a != c.points[i].a || a.points[i].b != c.points[i].b;
        }
        CHECK(all_equal);
        CHECK(any_differs_from_c);
        CHECK(a.planted->theta_hat == b.planted->theta_hat);
    }
}

TEST_CASE("line instances respect the noise bands") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset ds = gen(ModelKind::Line2d, 40, 0.25, 100 + seed);
        ds.validate();
        CHECK(ds.epsilon == 0.1);
        CHECK(ds.d == 2);
        REQUIRE(ds.planted.has_value());
        CHECK(ds.planted->outlier_indices.size() == 10);
        CHECK(std::is_sorted(ds.planted->outlier_indices.begin(),
                             ds.planted->outlier_indices.end()));

        const ModelParams truth{ds.planted->theta_hat};
        CHECK(truth.theta.cwiseAbs().maxCoeff() <= 1.0);
        for (int i = 0; i < ds.size(); ++i) {
            CHECK(std::abs(ds.points[i].a(0)) <= 1.0);
            CHECK(ds.points[i].a(1) == 1.0);
            const double r = residual(ds.points[i], truth);
            const bool outlier = std::binary_search(ds.planted->outlier_indices.begin(),
                                                    ds.planted->outlier_indices.end(), i);
            if (outlier) {
                CHECK(r > 0.1);
                CHECK(r <= 5.0);
            } else {
                CHECK(r <= 0.1);
            }
        }
    }
}

TEST_CASE("plane instances respect the noise bands") {
    const Dataset ds = gen(ModelKind::Plane3d, 30, 0.2, 9);
    ds.validate();
    CHECK(ds.d == 3);
    const ModelParams truth{ds.planted->theta_hat};
    for (int i = 0; i < ds.size(); ++i) {
        CHECK(ds.points[i].a(2) == 1.0);
        const double r = residual(ds.points[i], truth);
        const bool outlier = std::binary_search(ds.planted->outlier_indices.begin(),
                                                ds.planted->outlier_indices.end(), i);
        if (outlier)
            CHECK(r > 0.1);
        else
            CHECK(r <= 0.1);
    }
}

TEST_CASE("fundamental instances: inliers exact, outliers mismatched") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Dataset ds = gen(ModelKind::FundamentalLin, 25, 0.2, 200 + seed);
        ds.validate();
        CHECK(ds.d == 8);
        CHECK(ds.planted->outlier_indices.size() == 5);
        const ModelParams truth{ds.planted->theta_hat};
        for (int i = 0; i < ds.size(); ++i) {
            REQUIRE(ds.points[i].raw.has_value());
            CHECK(ds.points[i].raw->size() == 4);
            CHECK(ds.points[i].b == -1.0);
            const double r = residual(ds.points[i], truth);
            const bool outlier = std::binary_search(ds.planted->outlier_indices.begin(),
                                                    ds.planted->outlier_indices.end(), i);
            if (outlier)
                CHECK(r > ds.epsilon);
            else
                CHECK(r <= 1e-9);
        }
        // Rebuilding the regressor from raw coordinates reproduces it.
        const Eigen::VectorXd& raw = *ds.points[0].raw;
        const DataPoint rebuilt =
            linearize_correspondence({raw(0), raw(1)}, {raw(2), raw(3)});
        CHECK(ds.points[0].a.isApprox(rebuilt.a, 1e-12));
    }
}

TEST_CASE("single-outlier fundamental instances still mismatch") {
    const Dataset ds = gen(ModelKind::FundamentalLin, 25, 0.04, 77);
    REQUIRE(ds.planted->outlier_indices.size() == 1);
    const int o = ds.planted->outlier_indices[0];
    CHECK(residual(ds.points[o], ModelParams{ds.planted->theta_hat}) > ds.epsilon);
}

TEST_CASE("planted set is epsilon-feasible under the minimax fit") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Dataset ds = gen(ModelKind::Line2d, 20, 0.3, 300 + seed);
        std::vector<int> inliers;
        for (int i = 0; i < ds.size(); ++i)
            if (!std::binary_search(ds.planted->outlier_indices.begin(),
                                    ds.planted->outlier_indices.end(), i))
                inliers.push_back(i);
        CHECK(min_max_residual(ds, inliers) <= ds.epsilon + 1e-12);
    }
}
