#pragma once

#include <vector>

#include "maxcon/datagen.hpp"
#include "maxcon/model.hpp"

namespace maxcon::testing {

/// Line dataset from raw (a_raw, b) pairs.
inline Dataset make_line_dataset(const std::vector<std::pair<double, double>>& pts,
                                 double epsilon = 0.1) {
    Dataset ds;
    ds.model_kind = ModelKind::Line2d;
    ds.d = 2;
    ds.epsilon = epsilon;
    for (const auto& [a_raw, b] : pts) {
        DataPoint p;
        p.a.resize(2);
        p.a << a_raw, 1.0;
        p.b = b;
        ds.points.push_back(std::move(p));
    }
    return ds;
}

/// The 3-point instance used throughout: raw points (0,0), (1,0), (0.5,1).
/// Its minimax fit is theta = (0, 0.5) with gamma = 0.5 and a full basis.
inline Dataset derived_three_point() {
    return make_line_dataset({{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}});
}

/// 4 collinear points (b = 0.5 a + 0.2, exact) plus one gross outlier.
inline Dataset planted_four_plus_one() {
    auto line = [](double a) { return 0.5 * a + 0.2; };
    Dataset ds = make_line_dataset({{-1.0, line(-1.0)},
                                    {-0.3, line(-0.3)},
                                    {0.4, line(0.4)},
                                    {1.0, line(1.0)},
                                    {0.1, line(0.1) + 3.0}});
    Eigen::VectorXd theta(2);
    theta << 0.5, 0.2;
    ds.planted = Planted{theta, {4}};
    return ds;
}

/// Noise-free planted line: every point lies exactly on a random model,
/// so any non-degenerate 2-point hypothesis reproduces it.
inline Dataset exact_line_dataset(int n, std::uint64_t seed) {
    Rng rng(seed);
    const double t1 = rng.uniform(-1.0, 1.0);
    const double t2 = rng.uniform(-1.0, 1.0);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < n; ++i) {
        const double a = rng.uniform(-1.0, 1.0);
        pts.emplace_back(a, t1 * a + t2);
    }
    Dataset ds = make_line_dataset(pts);
    Eigen::VectorXd theta(2);
    theta << t1, t2;
    ds.planted = Planted{theta, {}};
    return ds;
}

inline std::vector<int> all_indices(const Dataset& ds) {
    std::vector<int> idx(ds.size());
    for (int i = 0; i < ds.size(); ++i) idx[i] = i;
    return idx;
}

inline Dataset gen(ModelKind kind, int n, double rate, std::uint64_t seed) {
    GenSpec spec;
    spec.model_kind = kind;
    spec.n = n;
    spec.outlier_rate = rate;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace maxcon::testing
