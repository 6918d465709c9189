#include "bacf/detect.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bacf/features.hpp"
#include "bacf/parallel.hpp"

namespace bacf::detect {

namespace {

class StageTimer {
 public:
  explicit StageTimer(double* sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    if (sink_)
      *sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  double* sink_;
  std::chrono::steady_clock::time_point start_;
};

double* slot(StageTimes* t, double StageTimes::*field) { return t ? &(t->*field) : nullptr; }

// Features of a model-sized patch, windowed, in spectral form.
core::SampleSpectrum sample_spectrum(const ImagePatch& patch, const TrackerState& s,
                                     StageTimes* times) {
  features::FeatureStack f;
  {
    StageTimer timer(slot(times, &StageTimes::features));
    f = features::apply_window(features::extract(s.params.features, patch, s.params.cell));
  }
  StageTimer timer(slot(times, &StageTimes::fft));
  return core::transform(f);
}

ImagePatch window_patch(const ImagePatch& frame, const TrackerState& s, double factor) {
  const double px = s.resize_factor * s.scale * factor;
  return features::sample_window(frame, s.center_x, s.center_y, s.model_w * px, s.model_h * px,
                                 s.model_w, s.model_h);
}

double parabola_offset(double left, double peak, double right) {
  const double denom = 2.0 * (2.0 * peak - left - right);
  if (!(denom > 0)) return 0.0;
  return std::clamp((right - left) / denom, -0.999999, 0.999999);
}

double parabola_gain(double left, double peak, double right) {
  const double curv = 2.0 * peak - left - right;
  if (!(curv > 0)) return 0.0;
  return (right - left) * (right - left) / (8.0 * curv);
}

struct ScaleBounds {
  double lo;
  double hi;
};

ScaleBounds scale_bounds(const TrackerState& s) {
  const double cell = s.params.cell;
  double lo = std::max(kMinScale, cell / std::min(s.base_w, s.base_h));
  double hi = std::min({kMaxScale, s.frame_w / s.base_w, s.frame_h / s.base_h});
  return {lo, hi};
}

}  // namespace

std::vector<double> scale_factors(int num_scales, double step) {
  if (num_scales < 1 || num_scales % 2 == 0) throw Error("number of scales must be odd");
  std::vector<double> out;
  const int half = (num_scales - 1) / 2;
  for (int s = -half; s <= half; ++s) out.push_back(std::pow(step, s));
  return out;
}

TrackerState init(const ImagePatch& frame, const BoundingBox& bbox, const core::BacfParams& params,
                  StageTimes* times) {
  params.validate();
  if (frame.empty()) throw Error("init: empty frame");

  const double x0 = std::clamp(bbox.x, 0.0, static_cast<double>(frame.width));
  const double y0 = std::clamp(bbox.y, 0.0, static_cast<double>(frame.height));
  const double x1 = std::clamp(bbox.x + bbox.w, 0.0, static_cast<double>(frame.width));
  const double y1 = std::clamp(bbox.y + bbox.h, 0.0, static_cast<double>(frame.height));
  if (x1 - x0 < params.cell || y1 - y0 < params.cell)
    throw Error("init: degenerate bounding box (smaller than one feature cell)");

  TrackerState s;
  s.params = params;
  s.frame_w = frame.width;
  s.frame_h = frame.height;
  s.center_x = (x0 + x1) / 2.0;
  s.center_y = (y0 + y1) / 2.0;
  s.base_w = x1 - x0;
  s.base_h = y1 - y0;

  const double area = s.base_w * s.base_h * params.search_area_factor * params.search_area_factor;
  s.resize_factor = area > params.max_window_area ? std::sqrt(area / params.max_window_area) : 1.0;

  const double target_w = s.base_w / s.resize_factor;
  const double target_h = s.base_h / s.resize_factor;
  const int cells_w = std::max(3, static_cast<int>(std::lround(target_w * params.search_area_factor / params.cell)));
  const int cells_h = std::max(3, static_cast<int>(std::lround(target_h * params.search_area_factor / params.cell)));
  s.model_w = cells_w * params.cell;
  s.model_h = cells_h * params.cell;
  const int filter_w = std::clamp(static_cast<int>(target_w / params.cell), 1, cells_w);
  const int filter_h = std::clamp(static_cast<int>(target_h / params.cell), 1, cells_h);
  s.crop = spectral::CropMap::centered(cells_w, cells_h, filter_w, filter_h);
  s.label = core::gaussian_label(filter_w, filter_h, cells_w, cells_h,
                                 params.label_bandwidth_divisor);

  s.model = sample_spectrum(window_patch(frame, s, 1.0), s, times);
  StageTimer timer(slot(times, &StageTimes::admm));
  s.filter = core::admm_learn(s.model, s.label, params, s.crop);
  return s;
}

std::vector<ImagePatch> build_scale_patches(const ImagePatch& frame, const TrackerState& state) {
  std::vector<ImagePatch> out;
  for (double f : scale_factors(state.params.num_scales, state.params.scale_step))
    out.push_back(window_patch(frame, state, f));
  return out;
}

Peak find_peak_subgrid(const RealPlane& r) {
  if (r.width < 3 || r.height < 3) throw DimensionError("find_peak_subgrid needs at least 3x3");
  const auto it = std::max_element(r.data.begin(), r.data.end());
  const int idx = static_cast<int>(it - r.data.begin());
  Peak p;
  p.row = idx / r.width;
  p.col = idx % r.width;
  const double v = *it;
  const double up = r((p.row + r.height - 1) % r.height, p.col);
  const double down = r((p.row + 1) % r.height, p.col);
  const double left = r(p.row, (p.col + r.width - 1) % r.width);
  const double right = r(p.row, (p.col + 1) % r.width);
  p.dy = core::wrapped_offset(p.row, r.height) + parabola_offset(up, v, down);
  p.dx = core::wrapped_offset(p.col, r.width) + parabola_offset(left, v, right);
  p.value = v;
  p.score = v + parabola_gain(up, v, down) + parabola_gain(left, v, right);
  return p;
}

ResponseMap correlate(const ComplexStack& g_hat, const ComplexStack& z_hat) {
  if (g_hat.empty() || g_hat.size() != z_hat.size())
    throw DimensionError("correlate: channel count mismatch");
  ComplexPlane acc(g_hat.front().width, g_hat.front().height);
  for (std::size_t k = 0; k < g_hat.size(); ++k) {
    if (!g_hat[k].same_dims(acc) || !z_hat[k].same_dims(acc))
      throw DimensionError("correlate: plane dims mismatch");
    const auto& g = g_hat[k].data;
    const auto& z = z_hat[k].data;
    for (std::size_t t = 0; t < acc.size(); ++t) acc.data[t] += std::conj(g[t]) * z[t];
  }
  ResponseMap out;
  out.response = spectral::idft2(acc);
  if (out.response.width >= 3 && out.response.height >= 3)
    out.peak = find_peak_subgrid(out.response);
  return out;
}

StepResult step(TrackerState& s, const ImagePatch& frame, StageTimes* times) {
  if (s.filter.g_hat.empty()) throw Error("step: tracker is not initialised");
  if (frame.width != s.frame_w || frame.height != s.frame_h)
    throw DimensionError("step: frame size differs from the initial frame");

  const auto factors = scale_factors(s.params.num_scales, s.params.scale_step);
  const int n = static_cast<int>(factors.size());
  std::vector<ResponseMap> responses(static_cast<std::size_t>(n));
  std::vector<StageTimes> scale_times(static_cast<std::size_t>(n));
  parallel_for(n, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      StageTimes* t = times ? &scale_times[i] : nullptr;
      const auto z = sample_spectrum(window_patch(frame, s, factors[i]), s, t);
      StageTimer timer(slot(t, &StageTimes::detection));
      responses[i] = correlate(s.filter.g_hat, z);
      responses[i].scale_index = i;
    }
  });
  if (times)
    for (const auto& t : scale_times) {
      times->features += t.features;
      times->fft += t.fft;
      times->detection += t.detection;
    }

  // Centre scale first so ties keep the current scale.
  const int mid = n / 2;
  int best = mid;
  for (int d = 1; d <= mid; ++d)
    for (int i : {mid - d, mid + d})
      if (responses[i].peak.score > responses[best].peak.score) best = i;

  const Peak& peak = responses[best].peak;
  StepResult result;
  result.scale_index = best;
  result.score = peak.score;

  const double px = s.params.cell * s.resize_factor * s.scale * factors[best];
  const ScaleBounds bounds = scale_bounds(s);
  if (bounds.lo > bounds.hi) {
    result.degenerate = true;
    result.box = s.box();
    return result;
  }
  s.center_x = std::clamp(s.center_x + peak.dx * px, 0.0, static_cast<double>(s.frame_w));
  s.center_y = std::clamp(s.center_y + peak.dy * px, 0.0, static_cast<double>(s.frame_h));
  s.scale = std::clamp(s.scale * factors[best], bounds.lo, bounds.hi);

  const auto x_new = sample_spectrum(window_patch(frame, s, 1.0), s, times);
  {
    StageTimer timer(slot(times, &StageTimes::admm));
    s.model = core::update_model(s.model, x_new, s.params.eta);
    s.filter = core::admm_learn(s.model, s.label, s.params, s.crop);
  }
  result.box = s.box();
  return result;
}

}  // namespace bacf::detect
