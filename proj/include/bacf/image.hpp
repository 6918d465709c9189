#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "bacf/error.hpp"

namespace bacf {

/// 8-bit-range image held as floats in [0, 255]; channels are interleaved
/// (RGB order for colour images).
struct ImagePatch {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<float> data;

  ImagePatch() = default;
  ImagePatch(int w, int h, int ch, float fill = 0.0f)
      : width(w), height(h), channels(ch),
        data(static_cast<std::size_t>(w) * h * ch, fill) {
    if (w < 1 || h < 1) throw DimensionError("image patch must be non-empty");
    if (ch != 1 && ch != 3) throw DimensionError("image patch needs 1 or 3 channels");
  }

  float& at(int row, int col, int ch = 0) {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  float at(int row, int col, int ch = 0) const {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  bool empty() const { return data.empty(); }

  friend bool operator==(const ImagePatch&, const ImagePatch&) = default;
};

/// Decodes any format the image codec supports (PNG, JPEG, PPM/PGM, ...).
/// Colour files come back with 3 channels, grayscale files with 1.
ImagePatch load_image(const std::filesystem::path& path);

/// Writes 8-bit output; values are rounded and clamped to [0, 255].
void save_image(const std::filesystem::path& path, const ImagePatch& img);

}  // namespace bacf
