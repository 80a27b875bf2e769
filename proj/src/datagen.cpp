#include "maxcon/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "maxcon/common.hpp"

namespace maxcon {

namespace {

constexpr double kInlierNoise = 0.1;
constexpr double kOutlierNoiseMax = 5.0;
constexpr double kEpsilon = 0.1;

/// First N_o entries of a seeded Fisher-Yates shuffle of 0..n-1.
std::vector<int> pick_outliers(int n, int n_o, Rng& rng) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < n - 1; ++i) {
        const int j = i + rng.uniform_int(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n_o);
    std::sort(idx.begin(), idx.end());
    return idx;
}

/// Magnitude in (0.1, 5], sign uniform.
double outlier_noise(Rng& rng) {
    const double mag = kInlierNoise + (kOutlierNoiseMax - kInlierNoise) * (1.0 - rng.uniform());
    return rng.uniform() < 0.5 ? -mag : mag;
}

}  // namespace

int GenSpec::num_outliers() const {
    return static_cast<int>(std::lround(outlier_rate * n));
}

void GenSpec::validate() const {
    if (outlier_rate < 0.0 || outlier_rate >= 1.0)
        throw ContractViolation("GenSpec: outlier_rate must be in [0, 1)");
    if (n - num_outliers() <= model_dim(model_kind))
        throw ContractViolation("GenSpec: too few inliers for the model dimension");
}

Dataset gen_line2d(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Dataset ds;
    ds.model_kind = ModelKind::Line2d;
    ds.d = 2;
    ds.epsilon = kEpsilon;

    Eigen::Vector2d theta(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const std::vector<int> outliers = pick_outliers(spec.n, spec.num_outliers(), rng);

    ds.points.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        const double a_raw = rng.uniform(-1.0, 1.0);
        DataPoint& p = ds.points[i];
        p.a.resize(2);
        p.a << a_raw, 1.0;
        p.b = a_raw * theta(0) + theta(1);
        if (std::binary_search(outliers.begin(), outliers.end(), i))
            p.b += outlier_noise(rng);
        else
            p.b += rng.uniform(-kInlierNoise, kInlierNoise);
    }
    ds.planted = Planted{theta, outliers};
    return ds;
}

Dataset gen_plane3d(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Dataset ds;
    ds.model_kind = ModelKind::Plane3d;
    ds.d = 3;
    ds.epsilon = kEpsilon;

    Eigen::Vector3d theta(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const std::vector<int> outliers = pick_outliers(spec.n, spec.num_outliers(), rng);

    ds.points.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        DataPoint& p = ds.points[i];
        p.a.resize(3);
        p.a << x, y, 1.0;
        p.b = x * theta(0) + y * theta(1) + theta(2);
        if (std::binary_search(outliers.begin(), outliers.end(), i))
            p.b += outlier_noise(rng);
        else
            p.b += rng.uniform(-kInlierNoise, kInlierNoise);
    }
    ds.planted = Planted{theta, outliers};
    return ds;
}

Dataset gen_fundamental(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    // Two normalized cameras with different focal lengths; the second is
    // translated and slightly rotated. Resample until F(2,2) is well away
    // from zero so the f33 = 1 normalization is stable.
    const double f1 = 1.0;
    const double f2 = 1.2;
    Eigen::Matrix3d k1 = Eigen::Matrix3d::Identity();
    k1(0, 0) = k1(1, 1) = f1;
    Eigen::Matrix3d k2 = Eigen::Matrix3d::Identity();
    k2(0, 0) = k2(1, 1) = f2;

    Eigen::Matrix3d fmat;
    Eigen::Matrix3d rot;
    Eigen::Vector3d trans;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 100) throw SolverError("gen_fundamental: could not find stable geometry");
        const double ang = rng.uniform(0.05, 0.15);
        rot = Eigen::AngleAxisd(ang, Eigen::Vector3d::UnitY()).toRotationMatrix();
        trans = Eigen::Vector3d(rng.uniform(0.3, 0.7), rng.uniform(-0.2, 0.2),
                                rng.uniform(0.05, 0.2));
        Eigen::Matrix3d tx;
        tx << 0, -trans(2), trans(1), trans(2), 0, -trans(0), -trans(1), trans(0), 0;
        fmat = k2.inverse().transpose() * tx * rot * k1.inverse();
        if (std::abs(fmat(2, 2)) > 1e-3) break;
    }
    fmat /= fmat(2, 2);

    const int n = spec.n;
    std::vector<Eigen::Vector2d> us(n), vs(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d x(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                rng.uniform(4.0, 8.0));
        const Eigen::Vector3d p1 = k1 * x;
        const Eigen::Vector3d p2 = k2 * (rot * x + trans);
        us[i] = p1.hnormalized();
        vs[i] = p2.hnormalized();
    }

    // Outliers become mismatches: rotate their second-view points among
    // themselves (or borrow a neighbour's when there is only one).
    const std::vector<int> outliers = pick_outliers(n, spec.num_outliers(), rng);
    if (outliers.size() >= 2) {
        const Eigen::Vector2d first = vs[outliers.front()];
        for (std::size_t t = 0; t + 1 < outliers.size(); ++t)
            vs[outliers[t]] = vs[outliers[t + 1]];
        vs[outliers.back()] = first;
    } else if (outliers.size() == 1) {
        const int o = outliers[0];
        vs[o] = vs[(o + 1) % n];
    }

    Dataset ds;
    ds.model_kind = ModelKind::FundamentalLin;
    ds.d = 8;
    ds.epsilon = kEpsilon;
    ds.points.reserve(n);
    for (int i = 0; i < n; ++i) ds.points.push_back(linearize_correspondence(us[i], vs[i]));

    Eigen::VectorXd theta(8);
    theta << fmat(0, 0), fmat(0, 1), fmat(0, 2), fmat(1, 0), fmat(1, 1), fmat(1, 2),
        fmat(2, 0), fmat(2, 1);
    ds.planted = Planted{theta, outliers};
    return ds;
}

Dataset generate(const GenSpec& spec) {
    switch (spec.model_kind) {
        case ModelKind::Line2d: return gen_line2d(spec);
        case ModelKind::Plane3d: return gen_plane3d(spec);
        case ModelKind::FundamentalLin: return gen_fundamental(spec);
    }
    throw ContractViolation("generate: unknown model kind");
}

}  // namespace maxcon
