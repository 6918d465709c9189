#pragma once

#include <vector>

#include "bacf/bacf_core.hpp"
#include "bacf/box.hpp"
#include "bacf/image.hpp"

namespace bacf::detect {

/// Bounds on scale relative to the initial target size.
inline constexpr double kMinScale = 0.1;
inline constexpr double kMaxScale = 10.0;

struct TrackerState {
  double center_x = 0.0;
  double center_y = 0.0;
  /// Target size in frame pixels at initialisation.
  double base_w = 0.0;
  double base_h = 0.0;
  double scale = 1.0;
  /// Frame pixels per model pixel at scale 1. Above 1 when the search
  /// window exceeds params.max_window_area.
  double resize_factor = 1.0;
  /// Model window in pixels; a whole number of cells per side.
  int model_w = 0;
  int model_h = 0;
  int frame_w = 0;
  int frame_h = 0;

  core::BacfParams params;
  spectral::CropMap crop;
  core::DesiredResponse label;
  core::FilterBank filter;
  core::SampleSpectrum model;

  double target_w() const { return base_w * scale; }
  double target_h() const { return base_h * scale; }
  BoundingBox box() const {
    return BoundingBox::from_center(center_x, center_y, target_w(), target_h());
  }
};

/// Wall-clock seconds spent per stage, accumulated across calls.
struct StageTimes {
  double features = 0.0;
  double fft = 0.0;
  double admm = 0.0;
  double detection = 0.0;
  double total() const { return features + fft + admm + detection; }
};

/// Throws Error when the (frame-clamped) box is narrower or shorter than one
/// feature cell.
TrackerState init(const ImagePatch& frame, const BoundingBox& bbox, const core::BacfParams& params,
                  StageTimes* times = nullptr);

/// Relative window factors step^s for s = -(S-1)/2 .. (S-1)/2.
std::vector<double> scale_factors(int num_scales, double step);

/// One model-sized patch per scale, ordered from smallest to largest window.
std::vector<ImagePatch> build_scale_patches(const ImagePatch& frame, const TrackerState& state);

struct Peak {
  int row = 0;
  int col = 0;
  /// Displacement in cells, circularly unwrapped, including the sub-cell
  /// refinement.
  double dy = 0.0;
  double dx = 0.0;
  /// Response at the integer peak, i.e. the plane maximum.
  double value = 0.0;
  /// Vertex value of the fitted parabolas; used to rank scales.
  double score = 0.0;
};

struct ResponseMap {
  RealPlane response;
  int scale_index = 0;
  Peak peak;
};

/// Integer argmax (first in row-major order on ties) refined by a separable
/// three-point parabola through the circular neighbours.
Peak find_peak_subgrid(const RealPlane& response);

/// response = idft2(sum_k conj(g_hat_k) * z_hat_k), peak filled in.
ResponseMap correlate(const ComplexStack& g_hat, const ComplexStack& z_hat);

struct StepResult {
  BoundingBox box;
  double score = 0.0;
  int scale_index = 0;
  /// Set when no admissible scale keeps the target at least one cell wide;
  /// the previous box is kept and the model is not updated.
  bool degenerate = false;
};

/// Detect in `frame` with the previous filter, move and rescale, then blend
/// the features at the new location into the model and relearn the filter.
StepResult step(TrackerState& state, const ImagePatch& frame, StageTimes* times = nullptr);

}  // namespace bacf::detect
