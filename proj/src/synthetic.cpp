#include "bacf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "bacf/rng.hpp"

namespace bacf::synthetic {

namespace {

constexpr int kTextureCells = 8;

// Bilinear lookup in a kTextureCells^2 grid at normalized coordinates [0, 1).
double texture_at(const std::vector<double>& tex, double u, double v) {
  const double x = std::clamp(u * kTextureCells - 0.5, 0.0, kTextureCells - 1.0);
  const double y = std::clamp(v * kTextureCells - 0.5, 0.0, kTextureCells - 1.0);
  const int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, kTextureCells - 1), y1 = std::min(y0 + 1, kTextureCells - 1);
  const double fx = x - x0, fy = y - y0;
  auto at = [&](int r, int c) { return tex[static_cast<std::size_t>(r) * kTextureCells + c]; };
  return (1 - fy) * ((1 - fx) * at(y0, x0) + fx * at(y0, x1)) +
         fy * ((1 - fx) * at(y1, x0) + fx * at(y1, x1));
}

}  // namespace

SyntheticSequence make_sequence(const SyntheticSpec& spec) {
  if (spec.frames < 1 || spec.width < 1 || spec.height < 1)
    throw Error("synthetic sequence needs positive frame count and size");
  Rng rng(spec.seed);

  std::vector<double> tex(kTextureCells * kTextureCells);
  for (auto& t : tex) t = 40.0 + 175.0 * rng.uniform();

  // Low-frequency background: a few random plane waves around mid gray.
  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<Wave> waves(4);
  for (auto& w : waves)
    w = {(rng.uniform() - 0.5) * 0.12, (rng.uniform() - 0.5) * 0.12,
         2 * std::numbers::pi * rng.uniform(), 12.0 + 12.0 * rng.uniform()};
  std::vector<double> background(static_cast<std::size_t>(spec.width) * spec.height, 128.0);
  for (int r = 0; r < spec.height; ++r)
    for (int c = 0; c < spec.width; ++c)
      for (const auto& w : waves)
        background[static_cast<std::size_t>(r) * spec.width + c] +=
            w.amp * std::sin(w.fx * c + w.fy * r + w.phase);

  SyntheticSequence seq;
  const double cx0 = spec.start_x + spec.target_w / 2.0;
  const double cy0 = spec.start_y + spec.target_h / 2.0;
  for (int f = 0; f < spec.frames; ++f) {
    const double s = std::pow(spec.scale_rate, f);
    const BoundingBox box = BoundingBox::from_center(cx0 + spec.velocity_x * f, cy0 + spec.velocity_y * f,
                                                     spec.target_w * s, spec.target_h * s);
    ImagePatch img(spec.width, spec.height, 1);
    for (int r = 0; r < spec.height; ++r) {
      const double py = r + 0.5;
      for (int c = 0; c < spec.width; ++c) {
        const double px = c + 0.5;
        double v = background[static_cast<std::size_t>(r) * spec.width + c];
        if (px >= box.x && px < box.x + box.w && py >= box.y && py < box.y + box.h)
          v = texture_at(tex, (px - box.x) / box.w, (py - box.y) / box.h);
        v += spec.noise_sigma * rng.normal();
        img.at(r, c) = static_cast<float>(std::clamp(std::round(v), 0.0, 255.0));
      }
    }
    seq.frames.push_back(std::move(img));
    seq.ground_truth.push_back(box);
  }
  return seq;
}

void write_otb(const SyntheticSequence& seq, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "img");
  std::ofstream gt(dir / "groundtruth_rect.txt");
  if (!gt) throw IoError("cannot write " + (dir / "groundtruth_rect.txt").string());
  char buf[128];
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%04zu.png", i + 1);
    save_image(dir / "img" / buf, seq.frames[i]);
    const auto& b = seq.ground_truth[i];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.3f,%.3f\n", b.x + 1.0, b.y + 1.0, b.w, b.h);
    gt << buf;
  }
}

}  // namespace bacf::synthetic
