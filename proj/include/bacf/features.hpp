#pragma once

#include "bacf/image.hpp"
#include "bacf/plane.hpp"

namespace bacf::features {

/// Number of channels produced by extract_hog.
inline constexpr int kHogChannels = 31;
inline constexpr int kHogOrientations = 9;
inline constexpr double kHogTruncation = 0.2;

/// Upper bounds of the FHOG outputs: each orientation channel averages four
/// truncated responses with weight 0.5, each texture channel sums 18.
inline constexpr double kHogOrientationBound = 4 * kHogTruncation * 0.5;
inline constexpr double kHogTextureBound = 18 * kHogTruncation * 0.2357;

struct FeatureStack {
  int cells_w = 0;
  int cells_h = 0;
  RealStack channels;

  FeatureStack() = default;
  FeatureStack(int w, int h, int k) : cells_w(w), cells_h(h), channels(k, RealPlane(w, h)) {}

  int num_channels() const { return static_cast<int>(channels.size()); }
};

enum class FeatureKind {
  Fhog,      ///< 31-channel Felzenszwalb HOG
  Gradient,  ///< single-channel gradient magnitude, for debugging and benchmarks
};

int channel_count(FeatureKind kind);

/// Luminance with weights (0.299, 0.587, 0.114); gray input is returned as-is.
ImagePatch to_grayscale(const ImagePatch& p);

/// Bilinear resampling with half-pixel centres and edge clamping.
ImagePatch resize_bilinear(const ImagePatch& p, int out_w, int out_h);

/// Copies the w x h window whose top-left corner is (x0, y0); pixels outside
/// the frame replicate the nearest edge pixel.
ImagePatch crop_replicate(const ImagePatch& frame, int x0, int y0, int w, int h);

/// Crop-and-resize in one pass: samples an out_w x out_h grid covering the
/// win_w x win_h window centred at (cx, cy), bilinearly and with edge
/// replication. Window size and centre may be fractional.
ImagePatch sample_window(const ImagePatch& frame, double cx, double cy, double win_w,
                         double win_h, int out_w, int out_h);

/// FHOG: 18 contrast-sensitive orientation channels, 9 contrast-insensitive
/// ones and 4 texture-energy channels, in that order.
///
/// Gradients are central differences on the grayscale patch (clamped at the
/// patch border); each pixel votes its magnitude into the nearest of 18
/// orientation bins and is spread bilinearly over the four surrounding cells.
/// Only cells fully inside the patch are kept, so the output grid is
/// floor(width / cell) x floor(height / cell). Block energies beyond the grid
/// edge reuse the nearest in-grid cell.
FeatureStack extract_hog(const ImagePatch& p, int cell);

/// Cell-pooled gradient magnitude, same grid as extract_hog.
FeatureStack extract_gradient(const ImagePatch& p, int cell);

FeatureStack extract(FeatureKind kind, const ImagePatch& p, int cell);

/// Multiplies every channel by hann2(cells_w, cells_h).
FeatureStack apply_window(const FeatureStack& f);

}  // namespace bacf::features
