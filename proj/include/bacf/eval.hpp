#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bacf/bacf_core.hpp"
#include "bacf/box.hpp"
#include "bacf/detect.hpp"
#include "bacf/image.hpp"

namespace bacf::eval {

/// Overlap thresholds 0.00, 0.05, ..., 1.00.
inline constexpr int kNumThresholds = 21;

double iou(const BoundingBox& a, const BoundingBox& b);

/// rates[i] = fraction of frames with IoU strictly greater than thresholds[i].
struct SuccessCurve {
  std::array<double, kNumThresholds> thresholds{};
  std::array<double, kNumThresholds> rates{};
};

SuccessCurve success_curve(std::span<const double> ious);

/// Mean of the sampled rates, in [0, 1]; multiply by 100 for the usual
/// percentage display.
double auc(const SuccessCurve& c);

double success_rate_at_half(std::span<const double> ious);

struct Sequence {
  std::string name;
  std::vector<std::filesystem::path> frames;
  std::vector<BoundingBox> ground_truth;
};

/// Parses "x,y,w,h" (commas, tabs or spaces) in 1-indexed OTB coordinates and
/// returns the 0-indexed box. `line_no` is only used in the error message.
BoundingBox parse_otb_line(std::string_view line, int line_no);

std::vector<BoundingBox> load_ground_truth(const std::filesystem::path& file);

/// Reads `<dir>/img/` (frames ordered by the number in their file name) and
/// `<dir>/groundtruth_rect.txt` (or `groundtruth.txt`). The frame and box
/// counts must match and be at least 2.
Sequence load_otb_sequence(const std::filesystem::path& dir);

struct Metrics {
  std::vector<double> ious;
  SuccessCurve curve;
  double auc = 0.0;
  double success_at_half = 0.0;
  double mean_iou = 0.0;
};

Metrics evaluate(std::span<const BoundingBox> predicted, std::span<const BoundingBox> truth);

struct OpeResult {
  std::vector<BoundingBox> boxes;
  /// Peak response per frame; 0 for the initialisation frame.
  std::vector<double> scores;
  Metrics metrics;
  /// Tracked frames (all but the first) per second of step time.
  double fps = 0.0;
  detect::StageTimes times;
};

using FrameLoader = std::function<ImagePatch(std::size_t index)>;

/// One-pass evaluation: initialise on the first ground-truth box, track to
/// the end, never reinitialise.
OpeResult run_ope(const FrameLoader& load, std::span<const BoundingBox> truth,
                  const core::BacfParams& params);
OpeResult run_ope(const Sequence& seq, const core::BacfParams& params);

}  // namespace bacf::eval
