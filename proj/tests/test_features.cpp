#include <gtest/gtest.h>

#include "bacf/features.hpp"
#include "bacf/rng.hpp"
#include "bacf/spectral.hpp"

namespace bacf {
namespace {

using namespace features;

ImagePatch random_image(Rng& rng, int w, int h, int ch = 1) {
  ImagePatch p(w, h, ch);
  for (auto& v : p.data) v = static_cast<float>(rng.uniform(0, 255));
  return p;
}

ImagePatch rotate180(const ImagePatch& p) {
  ImagePatch out(p.width, p.height, p.channels);
  for (int r = 0; r < p.height; ++r)
    for (int c = 0; c < p.width; ++c) out.at(p.height - 1 - r, p.width - 1 - c) = p.at(r, c);
  return out;
}

ImagePatch transpose(const ImagePatch& p) {
  ImagePatch out(p.height, p.width, p.channels);
  for (int r = 0; r < p.height; ++r)
    for (int c = 0; c < p.width; ++c) out.at(c, r) = p.at(r, c);
  return out;
}

int argmax_channel(const FeatureStack& f, int first, int count, int row, int col) {
  int best = first;
  for (int k = first; k < first + count; ++k)
    if (f.channels[k](row, col) > f.channels[best](row, col)) best = k;
  return best - first;
}

TEST(Grayscale, GrayPassesThrough) {
  Rng rng(1);
  const auto p = random_image(rng, 5, 4);
  EXPECT_EQ(to_grayscale(p), p);
}

TEST(Grayscale, WeightedSum) {
  ImagePatch white(1, 1, 3, 255.0f);
  EXPECT_NEAR(to_grayscale(white).data[0], 255.0f, 1e-4);
  ImagePatch p(1, 1, 3);
  p.data = {100, 150, 200};
  EXPECT_NEAR(to_grayscale(p).data[0], 140.75f, 1e-4);
}

TEST(Resize, SameSizeIsBitwiseIdentity) {
  Rng rng(2);
  const auto p = random_image(rng, 7, 5, 3);
  EXPECT_EQ(resize_bilinear(p, 7, 5), p);
}

TEST(Resize, MonotoneUpsample) {
  ImagePatch p(2, 1, 1);
  p.data = {0, 10};
  const auto r = resize_bilinear(p, 4, 1);
  EXPECT_EQ(r.data.front(), 0.0f);
  EXPECT_EQ(r.data.back(), 10.0f);
  for (int i = 0; i + 1 < 4; ++i) EXPECT_LE(r.data[i], r.data[i + 1]);
}

TEST(Resize, CheckerboardCenterIsCornerMean) {
  ImagePatch p(2, 2, 1);
  p.data = {0, 200, 200, 0};
  EXPECT_FLOAT_EQ(resize_bilinear(p, 3, 3).at(1, 1), 100.0f);
}

TEST(Crop, OutsideFrameReplicatesEdge) {
  Rng rng(3);
  const auto f = random_image(rng, 6, 4);
  const auto c = crop_replicate(f, -2, -1, 10, 7);
  EXPECT_EQ(c.at(0, 0), f.at(0, 0));
  EXPECT_EQ(c.at(6, 9), f.at(3, 5));
  EXPECT_EQ(c.at(3, 4), f.at(2, 2));
}

TEST(SampleWindow, UnitScaleMatchesIntegerCrop) {
  Rng rng(4);
  const auto f = random_image(rng, 20, 16);
  // Even window centred on a pixel corner lines up with whole pixels.
  const auto s = sample_window(f, 10.0, 8.0, 8, 6, 8, 6);
  EXPECT_EQ(s, crop_replicate(f, 6, 5, 8, 6));
}

TEST(Hog, ThirtyOneChannelsAndFloorGrid) {
  Rng rng(5);
  for (auto [w, h] : {std::pair{16, 16}, {18, 13}, {4, 4}, {33, 9}}) {
    const auto f = extract_hog(random_image(rng, w, h), 4);
    EXPECT_EQ(f.num_channels(), kHogChannels);
    EXPECT_EQ(f.cells_w, w / 4);
    EXPECT_EQ(f.cells_h, h / 4);
  }
  EXPECT_THROW(extract_hog(ImagePatch(3, 8, 1), 4), DimensionError);
}

TEST(Hog, ConstantPatchHasNoOrientationEnergy) {
  const auto f = extract_hog(ImagePatch(16, 16, 1, 77.0f), 4);
  for (int k = 0; k < kHogChannels; ++k)
    for (double v : f.channels[k].data) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Hog, OutputsWithinTruncationBounds) {
  Rng rng(6);
  const auto f = extract_hog(random_image(rng, 32, 24, 3), 4);
  for (int k = 0; k < kHogChannels; ++k)
    for (double v : f.channels[k].data) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, k < 27 ? kHogOrientationBound + 1e-12 : kHogTextureBound + 1e-12);
    }
}

TEST(Hog, StepEdgeOrientationFollowsRotation) {
  // Vertical edge: horizontal gradient, insensitive bin 0 (0 degrees).
  ImagePatch edge(16, 16, 1);
  for (int r = 0; r < 16; ++r)
    for (int c = 8; c < 16; ++c) edge.at(r, c) = 200.0f;
  const auto f = extract_hog(edge, 4);
  EXPECT_EQ(argmax_channel(f, 18, 9, 1, 1), 0);
  EXPECT_EQ(argmax_channel(f, 0, 18, 1, 1), 0);

  // Transposing turns it into a horizontal edge: gradient at 90 degrees, which
  // sits between the 80 and 100 degree bins.
  const auto g = extract_hog(transpose(edge), 4);
  const int bin = argmax_channel(g, 18, 9, 1, 1);
  EXPECT_TRUE(bin == 4 || bin == 5) << bin;
}

TEST(Hog, HalfTurnPermutesSensitiveBins) {
  Rng rng(7);
  const auto p = random_image(rng, 24, 20);
  const auto a = extract_hog(p, 4);
  const auto b = extract_hog(rotate180(p), 4);
  for (int cy = 0; cy < a.cells_h; ++cy)
    for (int cx = 0; cx < a.cells_w; ++cx) {
      const int ry = a.cells_h - 1 - cy, rx = a.cells_w - 1 - cx;
      for (int o = 0; o < 18; ++o)
        EXPECT_NEAR(a.channels[o](cy, cx), b.channels[(o + 9) % 18](ry, rx), 1e-9);
      for (int k = 18; k < 27; ++k) EXPECT_NEAR(a.channels[k](cy, cx), b.channels[k](ry, rx), 1e-9);
    }
}

TEST(Hog, TranslationByOneCellShiftsGrid) {
  Rng rng(8);
  const int cell = 4;
  const auto big = random_image(rng, 40, 32);
  ImagePatch a(32, 32, 1), b(32, 32, 1);
  for (int r = 0; r < 32; ++r)
    for (int c = 0; c < 32; ++c) {
      a.at(r, c) = big.at(r, c);
      b.at(r, c) = big.at(r, c + cell);
    }
  const auto fa = extract_hog(a, cell), fb = extract_hog(b, cell);
  // Cells within two of the border see clamped gradients or edge blocks.
  for (int k = 0; k < kHogChannels; ++k)
    for (int cy = 2; cy < fa.cells_h - 2; ++cy)
      for (int cx = 2; cx < fa.cells_w - 3; ++cx)
        EXPECT_NEAR(fb.channels[k](cy, cx), fa.channels[k](cy, cx + 1), 1e-6);
}

TEST(Gradient, SingleChannel) {
  Rng rng(9);
  const auto f = extract_gradient(random_image(rng, 16, 12), 4);
  EXPECT_EQ(f.num_channels(), 1);
  EXPECT_EQ(f.cells_w, 4);
  EXPECT_EQ(f.cells_h, 3);
  EXPECT_EQ(channel_count(FeatureKind::Gradient), 1);
}

FeatureStack random_stack(Rng& rng, int w, int h, int k) {
  FeatureStack f(w, h, k);
  for (auto& p : f.channels)
    for (auto& v : p.data) v = rng.normal();
  return f;
}

TEST(Window, OneCellGridUnchanged) {
  Rng rng(10);
  const auto f = random_stack(rng, 1, 1, 31);
  const auto g = apply_window(f);
  for (int k = 0; k < 31; ++k) EXPECT_EQ(g.channels[k].data, f.channels[k].data);
}

TEST(Window, BordersZeroCentreKept) {
  Rng rng(11);
  const auto f = random_stack(rng, 9, 9, 31);
  const auto g = apply_window(f);
  for (int k = 0; k < 31; ++k) {
    EXPECT_EQ(g.channels[k](4, 4), f.channels[k](4, 4));
    EXPECT_EQ(g.channels[k](0, 3), 0.0);
    EXPECT_EQ(g.channels[k](8, 8), 0.0);
  }
}

TEST(Window, TwiceAppliesSquaredWindow) {
  Rng rng(12);
  const auto f = random_stack(rng, 8, 6, 3);
  const auto twice = apply_window(apply_window(f));
  const auto w = spectral::hann2(8, 6);
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < w.size(); ++i)
      EXPECT_NEAR(twice.channels[k].data[i], f.channels[k].data[i] * w.data[i] * w.data[i], 1e-15);
}

}  // namespace
}  // namespace bacf
