#pragma once

#include <string>

#include "maxcon/training.hpp"

namespace maxcon {

/// Versioned JSON dataset file:
/// {version, model_kind, d, epsilon, points:[{a, b, raw?}], planted?}
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

/// CSV rows `u1,u2,v1,v2` (one optional header line). Each row becomes a
/// linearized-fundamental point; parse failures report the line number.
Dataset load_correspondences(const std::string& path, double epsilon = 0.01);

/// Binary checkpoint container: magic, JSON header (format version,
/// architecture manifest, train config, counters, optimizer/rng state),
/// then row-major weight blocks in the declared order.
void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace maxcon
