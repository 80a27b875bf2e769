#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "maxcon/common.hpp"

namespace maxcon {

enum class ModelKind {
    Line2d,          // a = (a_raw, 1), theta in R^2, b = a_raw*t1 + t2
    Plane3d,         // a = (x, y, 1), b = z
    FundamentalLin,  // linearized epipolar constraint, d = 8
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Dimension of theta for a model kind.
int model_dim(ModelKind kind);

/// One measurement x_i = (a_i; b_i). `raw` keeps the original observation
/// (image coordinates for correspondences) when one exists.
struct DataPoint {
    Eigen::VectorXd a;
    double b = 0.0;
    std::optional<Eigen::VectorXd> raw;
};

struct ModelParams {
    Eigen::VectorXd theta;
};

/// Ground truth record for synthetic instances.
struct Planted {
    Eigen::VectorXd theta_hat;
    std::vector<int> outlier_indices;
};

struct Dataset {
    std::vector<DataPoint> points;
    int d = 0;
    double epsilon = 0.0;
    ModelKind model_kind = ModelKind::Line2d;
    std::optional<Planted> planted;

    int size() const { return static_cast<int>(points.size()); }

    /// Checks the structural invariants (epsilon > 0, consistent dims,
    /// finite entries, N >= d). Throws ContractViolation on failure.
    void validate() const;
};

/// |a^T theta - b|
double residual(const DataPoint& point, const ModelParams& theta);

struct ConsensusResult {
    int count = 0;
    std::vector<bool> inlier_mask;
};

ConsensusResult consensus(const Dataset& dataset, const ModelParams& theta);

/// Row fed to the state encoding: [a^T b] for linear models, the raw
/// image coordinates [u1 u2 v1 v2] for linearized fundamental data.
Eigen::RowVectorXd feature_map(const DataPoint& point, ModelKind kind);

int feature_dim(ModelKind kind);

/// Builds the 8-dimensional linearized epipolar regressor with f33 = 1:
/// a = (v1*u1, v1*u2, v1, v2*u1, v2*u2, v2, u1, u2), b = -1.
DataPoint linearize_correspondence(const Eigen::Vector2d& u, const Eigen::Vector2d& v);

}  // namespace maxcon
