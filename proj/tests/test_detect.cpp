#include <gtest/gtest.h>

#include "bacf/detect.hpp"
#include "bacf/eval.hpp"
#include "bacf/synthetic.hpp"
#include "test_util.hpp"

namespace bacf {
namespace {

using namespace detect;
using core::BacfParams;
using testing::random_plane;

synthetic::SyntheticSequence static_scene(int frames) {
  synthetic::SyntheticSpec spec;
  spec.frames = frames;
  spec.velocity_x = 0.0;
  spec.noise_sigma = 0.0;
  return synthetic::make_sequence(spec);
}

TEST(ScaleFactors, GeometricLadder) {
  const auto f = scale_factors(5, 1.01);
  ASSERT_EQ(f.size(), 5u);
  EXPECT_DOUBLE_EQ(f[0], 1.0 / (1.01 * 1.01));
  EXPECT_DOUBLE_EQ(f[1], 1.0 / 1.01);
  EXPECT_EQ(f[2], 1.0);
  EXPECT_DOUBLE_EQ(f[3], 1.01);
  EXPECT_DOUBLE_EQ(f[4], 1.01 * 1.01);
  EXPECT_EQ(scale_factors(1, 1.01), std::vector<double>{1.0});
  EXPECT_THROW(scale_factors(4, 1.01), Error);
}

TEST(Init, DeterministicAndWellFormed) {
  const auto seq = static_scene(1);
  const BacfParams p;
  const auto a = init(seq.frames[0], seq.ground_truth[0], p);
  const auto b = init(seq.frames[0], seq.ground_truth[0], p);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.filter.h, b.filter.h);
  EXPECT_EQ(a.filter.g_hat, b.filter.g_hat);
  EXPECT_EQ(a.model_w % p.cell, 0);
  EXPECT_EQ(a.filter.h.size(), 31u);
  EXPECT_EQ(a.crop.full_w * p.cell, a.model_w);
  EXPECT_EQ(a.box().w, seq.ground_truth[0].w);
}

TEST(Init, CornerBoxUsesReplicatePadding) {
  ImagePatch frame(64, 48, 1, 50.0f);
  for (int r = 0; r < 12; ++r)
    for (int c = 0; c < 12; ++c) frame.at(r, c) = float(10 * ((r / 3 + c / 3) % 2) + 100);
  TrackerState s;
  EXPECT_NO_THROW(s = init(frame, {0, 0, 12, 12}, BacfParams{}));
  EXPECT_NO_THROW(step(s, frame));
}

TEST(Init, DegenerateBoxRejected) {
  ImagePatch frame(64, 48, 1);
  EXPECT_THROW(init(frame, {10, 10, 2, 20}, BacfParams{}), Error);
  EXPECT_THROW(init(frame, {70, 10, 20, 20}, BacfParams{}), Error);
}

TEST(ScalePatches, CountAndConstantFrame) {
  const ImagePatch flat(80, 60, 1, 42.0f);
  BacfParams p;
  TrackerState s = init(static_scene(1).frames[0], {40, 40, 20, 20}, p);
  const auto patches = build_scale_patches(flat, s);
  ASSERT_EQ(patches.size(), 5u);
  for (const auto& q : patches) {
    EXPECT_EQ(q.width, s.model_w);
    for (float v : q.data) EXPECT_EQ(v, 42.0f);
  }
  p.num_scales = 1;
  s.params = p;
  EXPECT_EQ(build_scale_patches(flat, s).size(), 1u);
}

TEST(Correlate, DeltaFilterReturnsSignal) {
  Rng rng(1);
  const auto x = random_plane(rng, 6, 5);
  RealPlane delta(6, 5);
  delta(0, 0) = 1.0;
  const auto r = correlate({spectral::dft2(delta)}, {spectral::dft2(x)});
  EXPECT_LT(testing::max_abs_diff(r.response, x), 1e-12);
}

TEST(Correlate, MatchedFilterPeaksAtZeroShift) {
  Rng rng(2);
  RealStack x{random_plane(rng, 8, 8), random_plane(rng, 8, 8)};
  ComplexStack X{spectral::dft2(x[0]), spectral::dft2(x[1])};
  const auto r = correlate(X, X);
  EXPECT_EQ(r.peak.row, 0);
  EXPECT_EQ(r.peak.col, 0);
}

TEST(Correlate, ShiftingFeaturesShiftsPeak) {
  Rng rng(3);
  const auto g = random_plane(rng, 10, 9);
  const auto G = spectral::dft2(g);
  const auto a = correlate({G}, {spectral::dft2(g)});
  const auto b = correlate({G}, {spectral::dft2(spectral::circshift(g, -1, 0))});
  EXPECT_EQ(b.peak.row, (a.peak.row + 1) % 9);
  EXPECT_EQ(b.peak.col, a.peak.col);
}

TEST(Correlate, PeakValueIsPlaneMax) {
  Rng rng(5);
  const auto r = correlate({spectral::dft2(random_plane(rng, 9, 7))},
                           {spectral::dft2(random_plane(rng, 9, 7))});
  EXPECT_EQ(r.peak.value, *std::max_element(r.response.data.begin(), r.response.data.end()));
  EXPECT_GE(r.peak.score, r.peak.value);
}

TEST(Correlate, ResponseIsReal) {
  Rng rng(4);
  ComplexStack g, z;
  for (int k = 0; k < 3; ++k) {
    g.push_back(spectral::dft2(random_plane(rng, 7, 6)));
    z.push_back(spectral::dft2(random_plane(rng, 7, 6)));
  }
  ComplexPlane acc(7, 6);
  for (int k = 0; k < 3; ++k)
    for (std::size_t t = 0; t < acc.size(); ++t) acc.data[t] += std::conj(g[k].data[t]) * z[k].data[t];
  const auto full = spectral::idft2_complex(acc);
  for (const auto& v : full.data) EXPECT_LT(std::abs(v.imag()), 1e-9);
  EXPECT_NO_THROW(correlate(g, z));
}

TEST(Peak, SymmetricNeighboursGiveZeroOffset) {
  RealPlane r(5, 5);
  r(2, 2) = 1.0;
  r(2, 1) = r(2, 3) = 0.5;
  r(1, 2) = r(3, 2) = 0.25;
  const auto p = find_peak_subgrid(r);
  EXPECT_EQ(p.row, 2);
  EXPECT_EQ(p.col, 2);
  EXPECT_EQ(p.dx, 2.0);
  EXPECT_EQ(p.dy, 2.0);
  EXPECT_EQ(p.score, 1.0);
}

TEST(Peak, ParabolicOffset) {
  RealPlane r(5, 5);
  r(0, 2) = 1.0;
  r(0, 1) = 0.5;
  r(0, 3) = 0.7;
  const auto p = find_peak_subgrid(r);
  EXPECT_DOUBLE_EQ(p.dx - 2.0, 0.125);
  EXPECT_EQ(p.value, 1.0);
  EXPECT_GE(p.score, 1.0);
}

TEST(Peak, CornerWrapsCircularly) {
  RealPlane r(4, 4);
  r(3, 3) = 1.0;
  r(3, 0) = 0.6;
  r(3, 2) = 0.2;
  r(0, 3) = 0.3;
  r(2, 3) = 0.3;
  Peak p;
  ASSERT_NO_THROW(p = find_peak_subgrid(r));
  EXPECT_EQ(p.col, 3);
  // Offset -1 cell, refined toward the wrapped right neighbour at column 0.
  EXPECT_GT(p.dx, -1.0);
  EXPECT_DOUBLE_EQ(p.dy, -1.0);
}

TEST(Step, SelfDetectionStaysPut) {
  const auto seq = static_scene(1);
  TrackerState s = init(seq.frames[0], seq.ground_truth[0], BacfParams{});
  const double cx = s.center_x, cy = s.center_y;
  const auto r = step(s, seq.frames[0]);
  EXPECT_EQ(r.scale_index, 2);
  EXPECT_LT(std::abs(s.center_x - cx), s.params.cell);
  EXPECT_LT(std::abs(s.center_y - cy), s.params.cell);
}

TEST(Step, StaticSceneDriftUnderOneCell) {
  const auto seq = static_scene(11);
  TrackerState s = init(seq.frames[0], seq.ground_truth[0], BacfParams{});
  const double cx = s.center_x, cy = s.center_y;
  for (int i = 1; i <= 10; ++i) step(s, seq.frames[i]);
  EXPECT_LT(std::hypot(s.center_x - cx, s.center_y - cy), s.params.cell * s.resize_factor);
}

TEST(Step, FrozenModelOnRepeatedFrameIsFixpoint) {
  const auto seq = static_scene(1);
  BacfParams p;
  p.eta = 0.0;
  TrackerState s = init(seq.frames[0], seq.ground_truth[0], p);
  const auto filter0 = s.filter.g_hat;
  // Same state and frame in, same result out; with eta = 0 the filter never
  // changes.
  for (int i = 0; i < 4; ++i) {
    TrackerState copy = s;
    const auto a = step(s, seq.frames[0]);
    const auto b = step(copy, seq.frames[0]);
    EXPECT_EQ(a.box.x, b.box.x);
    EXPECT_EQ(a.box.w, b.box.w);
    EXPECT_EQ(a.score, b.score);
    EXPECT_EQ(s.filter.g_hat, filter0);
  }
}

TEST(Step, AspectRatioPreserved) {
  synthetic::SyntheticSpec spec;
  spec.frames = 12;
  spec.target_w = 48;
  spec.target_h = 30;
  spec.scale_rate = 1.01;
  const auto seq = synthetic::make_sequence(spec);
  TrackerState s = init(seq.frames[0], seq.ground_truth[0], BacfParams{});
  const double ratio = seq.ground_truth[0].w / seq.ground_truth[0].h;
  for (int i = 1; i < spec.frames; ++i) {
    const auto r = step(s, seq.frames[i]);
    EXPECT_NEAR(r.box.w / r.box.h, ratio, 1e-12 * ratio);
  }
}

TEST(Step, TranslatingSquare) {
  const auto seq = synthetic::make_sequence({});
  const auto r = eval::run_ope([&](std::size_t i) { return seq.frames[i]; }, seq.ground_truth,
                               BacfParams{});
  EXPECT_GE(r.metrics.mean_iou, 0.7);
  for (double v : r.metrics.ious) EXPECT_GT(v, 0.0);
}

TEST(Step, RepeatedRunsAgree) {
  synthetic::SyntheticSpec spec;
  spec.frames = 8;
  const auto seq = synthetic::make_sequence(spec);
  auto run = [&] {
    return eval::run_ope([&](std::size_t i) { return seq.frames[i]; }, seq.ground_truth,
                         BacfParams{});
  };
  const auto a = run(), b = run();
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    EXPECT_EQ(a.boxes[i].x, b.boxes[i].x);
    EXPECT_EQ(a.scores[i], b.scores[i]);
  }
}

}  // namespace
}  // namespace bacf
