#pragma once

#include <cstdint>

#include "maxcon/model.hpp"

namespace maxcon {

struct GenSpec {
    ModelKind model_kind = ModelKind::Line2d;
    int n = 100;
    double outlier_rate = 0.0;  // in [0, 1)
    std::uint64_t seed = 0;

    int num_outliers() const;
    void validate() const;
};

/// 2D line: a_raw ~ U[-1,1], planted theta ~ U[-1,1]^2, inlier noise
/// U[-0.1, 0.1], outlier noise magnitude in (0.1, 5] with random sign.
/// epsilon = 0.1; the ground truth is recorded.
Dataset gen_line2d(const GenSpec& spec);

/// 3D plane: (x, y) ~ U[-1,1]^2, z = t1 x + t2 y + t3, same noise bands.
Dataset gen_plane3d(const GenSpec& spec);

/// Two-view synthesis: random 3D points projected through two cameras
/// with different focal lengths; outliers are mismatched correspondences
/// (their second-view points are permuted). epsilon = 0.1.
Dataset gen_fundamental(const GenSpec& spec);

/// Dispatch on spec.model_kind.
Dataset generate(const GenSpec& spec);

}  // namespace maxcon
