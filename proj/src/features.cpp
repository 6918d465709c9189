#include "bacf/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "bacf/spectral.hpp"

namespace bacf::features {

int channel_count(FeatureKind kind) {
  return kind == FeatureKind::Fhog ? kHogChannels : 1;
}

ImagePatch to_grayscale(const ImagePatch& p) {
  if (p.channels == 1) return p;
  if (p.channels != 3) throw DimensionError("to_grayscale needs 1 or 3 channels");
  ImagePatch out(p.width, p.height, 1);
  const std::size_t n = static_cast<std::size_t>(p.width) * p.height;
  for (std::size_t i = 0; i < n; ++i) {
    const float* px = &p.data[3 * i];
    out.data[i] = static_cast<float>(0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]);
  }
  return out;
}

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

std::vector<Tap> bilinear_taps(int in, int out) {
  std::vector<Tap> taps(static_cast<std::size_t>(out));
  const double ratio = static_cast<double>(in) / out;
  for (int i = 0; i < out; ++i) {
    double s = (i + 0.5) * ratio - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(in - 1));
    const int lo = static_cast<int>(std::floor(s));
    taps[i] = {lo, std::min(lo + 1, in - 1), s - lo};
  }
  return taps;
}

}  // namespace

ImagePatch resize_bilinear(const ImagePatch& p, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw DimensionError("resize target must be at least 1x1");
  if (p.width == out_w && p.height == out_h) return p;
  const auto tx = bilinear_taps(p.width, out_w);
  const auto ty = bilinear_taps(p.height, out_h);
  ImagePatch out(out_w, out_h, p.channels);
  for (int r = 0; r < out_h; ++r) {
    const Tap& y = ty[r];
    for (int c = 0; c < out_w; ++c) {
      const Tap& x = tx[c];
      for (int ch = 0; ch < p.channels; ++ch) {
        const double top = (1.0 - x.frac) * p.at(y.lo, x.lo, ch) + x.frac * p.at(y.lo, x.hi, ch);
        const double bot = (1.0 - x.frac) * p.at(y.hi, x.lo, ch) + x.frac * p.at(y.hi, x.hi, ch);
        out.at(r, c, ch) = static_cast<float>((1.0 - y.frac) * top + y.frac * bot);
      }
    }
  }
  return out;
}

ImagePatch crop_replicate(const ImagePatch& frame, int x0, int y0, int w, int h) {
  ImagePatch out(w, h, frame.channels);
  for (int r = 0; r < h; ++r) {
    const int sr = std::clamp(y0 + r, 0, frame.height - 1);
    for (int c = 0; c < w; ++c) {
      const int sc = std::clamp(x0 + c, 0, frame.width - 1);
      for (int ch = 0; ch < frame.channels; ++ch) out.at(r, c, ch) = frame.at(sr, sc, ch);
    }
  }
  return out;
}

ImagePatch sample_window(const ImagePatch& frame, double cx, double cy, double win_w,
                         double win_h, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw DimensionError("sample_window: output must be at least 1x1");
  const double sx = win_w / out_w, sy = win_h / out_h;
  std::vector<Tap> tx(static_cast<std::size_t>(out_w)), ty(static_cast<std::size_t>(out_h));
  auto tap = [](double s, int n) {
    s = std::clamp(s, 0.0, static_cast<double>(n - 1));
    const int lo = static_cast<int>(std::floor(s));
    return Tap{lo, std::min(lo + 1, n - 1), s - lo};
  };
  for (int c = 0; c < out_w; ++c) tx[c] = tap(cx + (c + 0.5 - out_w / 2.0) * sx - 0.5, frame.width);
  for (int r = 0; r < out_h; ++r) ty[r] = tap(cy + (r + 0.5 - out_h / 2.0) * sy - 0.5, frame.height);

  ImagePatch out(out_w, out_h, frame.channels);
  for (int r = 0; r < out_h; ++r) {
    const Tap& y = ty[r];
    for (int c = 0; c < out_w; ++c) {
      const Tap& x = tx[c];
      for (int ch = 0; ch < frame.channels; ++ch) {
        const double top = (1.0 - x.frac) * frame.at(y.lo, x.lo, ch) + x.frac * frame.at(y.lo, x.hi, ch);
        const double bot = (1.0 - x.frac) * frame.at(y.hi, x.lo, ch) + x.frac * frame.at(y.hi, x.hi, ch);
        out.at(r, c, ch) = static_cast<float>((1.0 - y.frac) * top + y.frac * bot);
      }
    }
  }
  return out;
}

namespace {

constexpr int kBins = 2 * kHogOrientations;

// Per-cell magnitude histograms with bilinear spatial voting. When
// `orientation` is false every vote lands in bin 0.
std::vector<double> cell_histograms(const ImagePatch& gray, int cell, int cells_w, int cells_h,
                                    int bins, bool orientation) {
  std::array<double, kHogOrientations> uu{}, vv{};
  for (int o = 0; o < kHogOrientations; ++o) {
    uu[o] = std::cos(o * std::numbers::pi / kHogOrientations);
    vv[o] = std::sin(o * std::numbers::pi / kHogOrientations);
  }

  std::vector<double> hist(static_cast<std::size_t>(cells_w) * cells_h * bins, 0.0);
  const int w = gray.width, h = gray.height;
  for (int y = 0; y < h; ++y) {
    const int yu = std::max(y - 1, 0), yd = std::min(y + 1, h - 1);
    const double yp = (y + 0.5) / cell - 0.5;
    const int iyp = static_cast<int>(std::floor(yp));
    const double vy0 = yp - iyp, vy1 = 1.0 - vy0;
    for (int x = 0; x < w; ++x) {
      const int xl = std::max(x - 1, 0), xr = std::min(x + 1, w - 1);
      const double dx = static_cast<double>(gray.at(y, xr)) - gray.at(y, xl);
      const double dy = static_cast<double>(gray.at(yd, x)) - gray.at(yu, x);
      const double v = std::sqrt(dx * dx + dy * dy);
      if (v == 0.0) continue;

      int bin = 0;
      if (orientation) {
        double best = 0.0;
        for (int o = 0; o < kHogOrientations; ++o) {
          const double d = uu[o] * dx + vv[o] * dy;
          if (d > best) {
            best = d;
            bin = o;
          } else if (-d > best) {
            best = -d;
            bin = o + kHogOrientations;
          }
        }
      }

      const double xp = (x + 0.5) / cell - 0.5;
      const int ixp = static_cast<int>(std::floor(xp));
      const double vx0 = xp - ixp, vx1 = 1.0 - vx0;
      auto vote = [&](int cx, int cy, double weight) {
        if (cx < 0 || cy < 0 || cx >= cells_w || cy >= cells_h) return;
        hist[(static_cast<std::size_t>(cy) * cells_w + cx) * bins + bin] += weight * v;
      };
      vote(ixp, iyp, vx1 * vy1);
      vote(ixp + 1, iyp, vx0 * vy1);
      vote(ixp, iyp + 1, vx1 * vy0);
      vote(ixp + 1, iyp + 1, vx0 * vy0);
    }
  }
  return hist;
}

void check_cell(const ImagePatch& p, int cell) {
  if (cell < 1) throw DimensionError("cell size must be positive");
  if (p.width < cell || p.height < cell)
    throw DimensionError("patch is smaller than one feature cell");
}

}  // namespace

FeatureStack extract_hog(const ImagePatch& p, int cell) {
  check_cell(p, cell);
  const ImagePatch gray = to_grayscale(p);
  const int cw = gray.width / cell, ch = gray.height / cell;
  const auto hist = cell_histograms(gray, cell, cw, ch, kBins, true);
  auto hist_at = [&](int cx, int cy, int b) {
    return hist[(static_cast<std::size_t>(cy) * cw + cx) * kBins + b];
  };

  std::vector<double> energy(static_cast<std::size_t>(cw) * ch, 0.0);
  for (int cy = 0; cy < ch; ++cy)
    for (int cx = 0; cx < cw; ++cx) {
      double e = 0.0;
      for (int o = 0; o < kHogOrientations; ++o) {
        const double s = hist_at(cx, cy, o) + hist_at(cx, cy, o + kHogOrientations);
        e += s * s;
      }
      energy[static_cast<std::size_t>(cy) * cw + cx] = e;
    }
  auto energy_at = [&](int cx, int cy) {
    cx = std::clamp(cx, 0, cw - 1);
    cy = std::clamp(cy, 0, ch - 1);
    return energy[static_cast<std::size_t>(cy) * cw + cx];
  };

  constexpr double eps = 1e-4;
  FeatureStack out(cw, ch, kHogChannels);
  for (int cy = 0; cy < ch; ++cy) {
    for (int cx = 0; cx < cw; ++cx) {
      // One normaliser per 2x2 block containing this cell.
      std::array<double, 4> norm{};
      int i = 0;
      for (int by : {0, -1})
        for (int bx : {0, -1})
          norm[i++] = 1.0 / std::sqrt(energy_at(cx + bx, cy + by) + energy_at(cx + bx + 1, cy + by) +
                                      energy_at(cx + bx, cy + by + 1) +
                                      energy_at(cx + bx + 1, cy + by + 1) + eps);

      std::array<double, 4> texture{};
      for (int o = 0; o < kBins; ++o) {
        const double v = hist_at(cx, cy, o);
        double sum = 0.0;
        for (int n = 0; n < 4; ++n) {
          const double t = std::min(v * norm[n], kHogTruncation);
          sum += t;
          texture[n] += t;
        }
        out.channels[o](cy, cx) = 0.5 * sum;
      }
      for (int o = 0; o < kHogOrientations; ++o) {
        const double v = hist_at(cx, cy, o) + hist_at(cx, cy, o + kHogOrientations);
        double sum = 0.0;
        for (int n = 0; n < 4; ++n) sum += std::min(v * norm[n], kHogTruncation);
        out.channels[kBins + o](cy, cx) = 0.5 * sum;
      }
      for (int n = 0; n < 4; ++n)
        out.channels[kBins + kHogOrientations + n](cy, cx) = 0.2357 * texture[n];
    }
  }
  return out;
}

FeatureStack extract_gradient(const ImagePatch& p, int cell) {
  check_cell(p, cell);
  const ImagePatch gray = to_grayscale(p);
  const int cw = gray.width / cell, ch = gray.height / cell;
  auto hist = cell_histograms(gray, cell, cw, ch, 1, false);
  FeatureStack out(cw, ch, 1);
  const double scale = 1.0 / (255.0 * cell * cell);
  for (std::size_t i = 0; i < hist.size(); ++i) out.channels[0].data[i] = hist[i] * scale;
  return out;
}

FeatureStack extract(FeatureKind kind, const ImagePatch& p, int cell) {
  return kind == FeatureKind::Fhog ? extract_hog(p, cell) : extract_gradient(p, cell);
}

FeatureStack apply_window(const FeatureStack& f) {
  FeatureStack out = f;
  if (f.channels.empty()) return out;
  const RealPlane win = spectral::hann2(f.cells_w, f.cells_h);
  for (auto& plane : out.channels)
    for (std::size_t i = 0; i < plane.size(); ++i) plane.data[i] *= win.data[i];
  return out;
}

}  // namespace bacf::features
