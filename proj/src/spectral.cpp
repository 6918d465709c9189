#include "bacf/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

namespace bacf::spectral {

namespace {

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are built once per (w, h, sign) under a lock and never freed.
// FFTW_ESTIMATE keeps the chosen algorithm, and so the rounding, fixed.
class PlanCache {
 public:
  fftw_plan get(int w, int h, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(w, h, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> in(static_cast<std::size_t>(w) * h), out(in.size());
    fftw_plan plan = fftw_plan_dft_2d(h, w, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(const ComplexPlane& in, ComplexPlane& out, int sign) {
  if (in.width < 1 || in.height < 1) throw DimensionError("transform of an empty plane");
  fftw_plan plan = plan_cache().get(in.width, in.height, sign);
  // fftw_execute_dft does not modify the input of an out-of-place plan.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data.data())),
                   reinterpret_cast<fftw_complex*>(out.data.data()));
}

}  // namespace

ComplexPlane dft2(const ComplexPlane& p) {
  ComplexPlane out(p.width, p.height);
  execute(p, out, FFTW_FORWARD);
  return out;
}

ComplexPlane dft2(const RealPlane& p) {
  ComplexPlane in(p.width, p.height);
  std::copy(p.data.begin(), p.data.end(), in.data.begin());
  return dft2(in);
}

ComplexPlane idft2_complex(const ComplexPlane& p) {
  ComplexPlane out(p.width, p.height);
  execute(p, out, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(p.size());
  for (auto& v : out.data) v *= inv;
  return out;
}

double symmetry_defect(const ComplexPlane& p) {
  double peak = 0.0;
  for (const auto& v : p.data) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double worst = 0.0;
  for (int r = 0; r < p.height; ++r) {
    const int mr = (p.height - r) % p.height;
    for (int c = 0; c < p.width; ++c) {
      const int mc = (p.width - c) % p.width;
      worst = std::max(worst, std::abs(p(r, c) - std::conj(p(mr, mc))));
    }
  }
  return worst / peak;
}

RealPlane idft2(const ComplexPlane& p, SymmetryCheck check) {
  if (check == SymmetryCheck::Enforce) {
    const double defect = symmetry_defect(p);
    if (defect > kSymmetryTolerance)
      throw SymmetryError("spectrum is not conjugate-symmetric (relative defect " +
                          std::to_string(defect) + ")");
  }
  const ComplexPlane full = idft2_complex(p);
  RealPlane out(p.width, p.height);
  for (std::size_t i = 0; i < full.size(); ++i) out.data[i] = full.data[i].real();
  return out;
}

namespace {

std::vector<double> hann1(int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (n == 1) return w;
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  return w;
}

}  // namespace

RealPlane hann2(int w, int h) {
  if (w < 1 || h < 1) throw DimensionError("hann2 needs positive dimensions");
  const auto wx = hann1(w);
  const auto wy = hann1(h);
  RealPlane out(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out(r, c) = wy[r] * wx[c];
  return out;
}

template <typename T>
Plane<T> circshift(const Plane<T>& p, int dr, int dc) {
  Plane<T> out(p.width, p.height);
  const int h = p.height, w = p.width;
  const int sr = ((dr % h) + h) % h;
  const int sc = ((dc % w) + w) % w;
  for (int r = 0; r < h; ++r) {
    const int rr = (r + sr) % h;
    for (int c = 0; c < w; ++c) out(r, c) = p(rr, (c + sc) % w);
  }
  return out;
}

CropMap CropMap::centered(int full_w, int full_h, int crop_w, int crop_h) {
  if (crop_w < 1 || crop_h < 1 || crop_w > full_w || crop_h > full_h)
    throw DimensionError("crop dims must be positive and no larger than the full dims");
  return CropMap{full_w, full_h, crop_w, crop_h, (full_h - crop_h) / 2, (full_w - crop_w) / 2};
}

template <typename T>
Plane<T> crop_mid(const Plane<T>& p, const CropMap& m) {
  if (!p.same_dims(m.full_w, m.full_h)) throw DimensionError("crop_mid: input dims != full dims");
  Plane<T> out(m.crop_w, m.crop_h);
  for (int r = 0; r < m.crop_h; ++r) {
    auto src = p.data.begin() + static_cast<std::ptrdiff_t>(r + m.origin_row) * p.width + m.origin_col;
    std::copy(src, src + m.crop_w, out.data.begin() + static_cast<std::ptrdiff_t>(r) * m.crop_w);
  }
  return out;
}

template <typename T>
Plane<T> zero_pad_center(const Plane<T>& p, const CropMap& m) {
  if (!p.same_dims(m.crop_w, m.crop_h))
    throw DimensionError("zero_pad_center: input dims != crop dims");
  Plane<T> out(m.full_w, m.full_h);
  for (int r = 0; r < m.crop_h; ++r) {
    auto src = p.data.begin() + static_cast<std::ptrdiff_t>(r) * m.crop_w;
    std::copy(src, src + m.crop_w,
              out.data.begin() + static_cast<std::ptrdiff_t>(r + m.origin_row) * m.full_w + m.origin_col);
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template RealPlane circshift(const RealPlane&, int, int);
template ComplexPlane circshift(const ComplexPlane&, int, int);
template RealPlane crop_mid(const RealPlane&, const CropMap&);
template ComplexPlane crop_mid(const ComplexPlane&, const CropMap&);
template RealPlane zero_pad_center(const RealPlane&, const CropMap&);
template ComplexPlane zero_pad_center(const ComplexPlane&, const CropMap&);

}  // namespace bacf::spectral
