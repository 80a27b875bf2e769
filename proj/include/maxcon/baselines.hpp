#pragma once

#include <cstdint>

#include "maxcon/search.hpp"

namespace maxcon {

struct RansacConfig {
    long max_iterations = 1000;   // <= 0 means unlimited (time budget only)
    double max_seconds = 0.0;     // <= 0 means no time budget
    std::uint64_t seed = 0;
    bool lo_enabled = false;
    int lo_inner_iterations = 10;

    void validate() const;
};

/// Classic hypothesize-and-verify: sample d points, solve the d x d
/// system exactly, score by consensus, keep the best. nodes_expanded
/// reports the number of hypothesis iterations.
SearchResult ransac(const Dataset& dataset, const RansacConfig& config);

/// RANSAC plus iterated least-squares refits on the inlier set whenever
/// the best hypothesis improves.
SearchResult lo_ransac(const Dataset& dataset, const RansacConfig& config);

}  // namespace maxcon
