#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "bacf/box.hpp"
#include "bacf/image.hpp"

namespace bacf::synthetic {

/// A textured square moving over a smooth textured background.
struct SyntheticSpec {
  int frames = 60;
  int width = 320;
  int height = 240;
  double target_w = 40.0;
  double target_h = 40.0;
  /// Top-left corner in frame 1.
  double start_x = 60.0;
  double start_y = 100.0;
  /// Pixels per frame.
  double velocity_x = 2.0;
  double velocity_y = 0.0;
  /// Per-frame size multiplier, applied about the target centre.
  double scale_rate = 1.0;
  /// Standard deviation of per-pixel Gaussian noise, in gray levels.
  double noise_sigma = 3.0;
  std::uint64_t seed = 1;
};

struct SyntheticSequence {
  std::vector<ImagePatch> frames;
  std::vector<BoundingBox> ground_truth;
};

SyntheticSequence make_sequence(const SyntheticSpec& spec);

/// Writes img/0001.png ... and groundtruth_rect.txt (1-indexed, comma
/// separated) under `dir`.
void write_otb(const SyntheticSequence& seq, const std::filesystem::path& dir);

}  // namespace bacf::synthetic
