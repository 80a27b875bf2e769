#include "maxcon/model.hpp"

#include <cmath>

namespace maxcon {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Line2d: return "line2d";
        case ModelKind::Plane3d: return "plane3d";
        case ModelKind::FundamentalLin: return "fundamental_linearized";
    }
    throw ContractViolation("to_string: unknown ModelKind");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "line2d") return ModelKind::Line2d;
    if (name == "plane3d") return ModelKind::Plane3d;
    if (name == "fundamental_linearized") return ModelKind::FundamentalLin;
    throw ContractViolation("unknown model kind: " + name);
}

int model_dim(ModelKind kind) {
    switch (kind) {
        case ModelKind::Line2d: return 2;
        case ModelKind::Plane3d: return 3;
        case ModelKind::FundamentalLin: return 8;
    }
    throw ContractViolation("model_dim: unknown ModelKind");
}

void Dataset::validate() const {
    if (epsilon <= 0.0) throw ContractViolation("Dataset: epsilon must be positive");
    if (size() < d) throw ContractViolation("Dataset: need at least d points");
    if (d != model_dim(model_kind)) throw ContractViolation("Dataset: d does not match model kind");
    for (const DataPoint& p : points) {
        if (p.a.size() != d) throw ContractViolation("Dataset: point dimension mismatch");
        if (!p.a.allFinite() || !std::isfinite(p.b))
            throw ContractViolation("Dataset: non-finite point entry");
    }
    if (planted) {
        if (planted->theta_hat.size() != d)
            throw ContractViolation("Dataset: planted theta dimension mismatch");
        for (int i : planted->outlier_indices)
            if (i < 0 || i >= size()) throw ContractViolation("Dataset: planted outlier index out of range");
    }
}

double residual(const DataPoint& point, const ModelParams& theta) {
    if (point.a.size() != theta.theta.size())
        throw ContractViolation("residual: dimension mismatch");
    return std::abs(point.a.dot(theta.theta) - point.b);
}

ConsensusResult consensus(const Dataset& dataset, const ModelParams& theta) {
    ConsensusResult result;
    result.inlier_mask.resize(dataset.points.size(), false);
    for (std::size_t i = 0; i < dataset.points.size(); ++i) {
        if (residual(dataset.points[i], theta) <= dataset.epsilon) {
            result.inlier_mask[i] = true;
            ++result.count;
        }
    }
    return result;
}

int feature_dim(ModelKind kind) {
    return kind == ModelKind::FundamentalLin ? 4 : model_dim(kind) + 1;
}

Eigen::RowVectorXd feature_map(const DataPoint& point, ModelKind kind) {
    if (kind == ModelKind::FundamentalLin) {
        if (!point.raw || point.raw->size() != 4)
            throw ContractViolation("feature_map: fundamental point without raw coordinates");
        return point.raw->transpose();
    }
    Eigen::RowVectorXd row(point.a.size() + 1);
    row << point.a.transpose(), point.b;
    return row;
}

DataPoint linearize_correspondence(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    if (!u.allFinite() || !v.allFinite())
        throw ContractViolation("linearize_correspondence: non-finite coordinates");
    DataPoint p;
    p.a.resize(8);
    p.a << v(0) * u(0), v(0) * u(1), v(0),
           v(1) * u(0), v(1) * u(1), v(1),
           u(0), u(1);
    p.b = -1.0;
    Eigen::VectorXd raw(4);
    raw << u(0), u(1), v(0), v(1);
    p.raw = raw;
    return p;
}

}  // namespace maxcon
