#include "bacf/bacf_core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "bacf/parallel.hpp"

namespace bacf::core {

void BacfParams::validate() const {
  auto fail = [](const std::string& what) { throw Error("invalid parameter: " + what); };
  if (!(lambda > 0)) fail("lambda must be > 0");
  if (admm_iters < 1) fail("admm_iters must be >= 1");
  if (!(mu0 > 0)) fail("mu0 must be > 0");
  if (!(beta > 1)) fail("beta must be > 1");
  if (!(mu_max >= mu0)) fail("mu_max must be >= mu0");
  if (!(eta >= 0 && eta <= 1)) fail("eta must lie in [0, 1]");
  if (!(label_bandwidth_divisor > 0)) fail("label_bandwidth_divisor must be > 0");
  if (cell < 1) fail("cell must be >= 1");
  if (num_scales < 1 || num_scales % 2 == 0) fail("num_scales must be a positive odd count");
  if (!(scale_step > 0)) fail("scale_step must be > 0");
  if (!(search_area_factor >= 1)) fail("search_area_factor must be >= 1");
  if (!(max_window_area > 0)) fail("max_window_area must be > 0");
}

int wrapped_offset(int i, int n) { return ((i + n / 2) % n) - n / 2; }

DesiredResponse gaussian_label(double target_w, double target_h, int full_w, int full_h,
                               double divisor) {
  if (!(divisor > 0)) throw Error("label bandwidth divisor must be > 0");
  if (target_w > full_w || target_h > full_h)
    throw DimensionError("label target larger than the window");
  const double sigma = std::sqrt(target_w * target_h) / divisor;
  const double denom = 2.0 * sigma * sigma;
  RealPlane y(full_w, full_h);
  for (int r = 0; r < full_h; ++r) {
    const double dr = wrapped_offset(r, full_h);
    for (int c = 0; c < full_w; ++c) {
      const double dc = wrapped_offset(c, full_w);
      y(r, c) = std::exp(-(dr * dr + dc * dc) / denom);
    }
  }
  return DesiredResponse{spectral::dft2(y), 0, 0};
}

std::vector<Complex> solve_g_direct(std::span<const Complex> x, Complex y,
                                    std::span<const Complex> zeta, std::span<const Complex> h,
                                    double mu, double T) {
  const auto k = static_cast<Eigen::Index>(x.size());
  if (zeta.size() != x.size() || h.size() != x.size())
    throw DimensionError("solve_g_direct: channel count mismatch");
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), k), zv(zeta.data(), k), hv(h.data(), k);
  Eigen::MatrixXcd a = xv * xv.adjoint();
  a.diagonal().array() += T * mu;
  const Eigen::VectorXcd rhs = y * xv - T * zv + T * mu * hv;
  const Eigen::VectorXcd g = a.partialPivLu().solve(rhs);
  return {g.data(), g.data() + k};
}

void solve_g_sm(std::span<const Complex> x, Complex y, std::span<const Complex> zeta,
                std::span<const Complex> h, double mu, double T, std::span<Complex> out) {
  const std::size_t k = x.size();
  double sx = 0.0;
  Complex sl{}, sh{};
  for (std::size_t i = 0; i < k; ++i) {
    sx += std::norm(x[i]);
    sl += std::conj(x[i]) * zeta[i];
    sh += std::conj(x[i]) * h[i];
  }
  const double b = sx + T * mu;
  const Complex coef = (y * sx / T - sl + mu * sh) / (mu * b);
  for (std::size_t i = 0; i < k; ++i)
    out[i] = (y * x[i] / T - zeta[i] + mu * h[i]) / mu - x[i] * coef;
}

std::vector<Complex> solve_g_sm(std::span<const Complex> x, Complex y,
                                std::span<const Complex> zeta, std::span<const Complex> h,
                                double mu, double T) {
  if (zeta.size() != x.size() || h.size() != x.size())
    throw DimensionError("solve_g_sm: channel count mismatch");
  std::vector<Complex> out(x.size());
  solve_g_sm(x, y, zeta, h, mu, T, out);
  return out;
}

namespace {

void check_stack(const ComplexStack& s, const ComplexStack& ref, const char* what) {
  if (s.size() != ref.size()) throw DimensionError(std::string(what) + ": channel count mismatch");
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!s[k].same_dims(ref[k])) throw DimensionError(std::string(what) + ": plane dims mismatch");
}

ComplexStack zeros_like(const ComplexStack& ref) {
  ComplexStack out;
  out.reserve(ref.size());
  for (const auto& p : ref) out.emplace_back(p.width, p.height);
  return out;
}

}  // namespace

ComplexStack solve_g(const SampleSpectrum& x_hat, const ComplexPlane& y_hat,
                     const ComplexStack& zeta_hat, const ComplexStack& h_hat, double mu,
                     GSolver solver, double t_scale) {
  if (x_hat.empty()) throw DimensionError("solve_g: empty sample");
  check_stack(zeta_hat, x_hat, "solve_g");
  check_stack(h_hat, x_hat, "solve_g");
  if (!y_hat.same_dims(x_hat.front())) throw DimensionError("solve_g: label dims mismatch");

  const std::size_t k = x_hat.size();
  const int bins = static_cast<int>(y_hat.size());
  const double T = static_cast<double>(bins) * t_scale;
  ComplexStack out = zeros_like(x_hat);

  parallel_for(bins, [&](int begin, int end) {
    std::vector<Complex> xs(k), zs(k), hs(k), gs(k);
    for (int t = begin; t < end; ++t) {
      for (std::size_t c = 0; c < k; ++c) {
        xs[c] = x_hat[c].data[t];
        zs[c] = zeta_hat[c].data[t];
        hs[c] = h_hat[c].data[t];
      }
      const Complex y = std::conj(y_hat.data[t]);
      if (solver == GSolver::ShermanMorrison) {
        solve_g_sm(xs, y, zs, hs, mu, T, gs);
      } else {
        gs = solve_g_direct(xs, y, zs, hs, mu, T);
      }
      for (std::size_t c = 0; c < k; ++c) out[c].data[t] = gs[c];
    }
  });
  return out;
}

RealStack solve_h(const ComplexStack& g_hat, const ComplexStack& zeta_hat, double mu,
                  double lambda, const spectral::CropMap& crop) {
  check_stack(zeta_hat, g_hat, "solve_h");
  if (!(mu > 0)) throw Error("solve_h: mu must be > 0");
  const double T = crop.full_size();
  const double scale = 1.0 / (mu + lambda / T);
  RealStack h(g_hat.size());
  parallel_for(static_cast<int>(g_hat.size()), [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      if (!g_hat[k].same_dims(crop.full_w, crop.full_h))
        throw DimensionError("solve_h: spectrum dims != crop full dims");
      ComplexPlane combined(crop.full_w, crop.full_h);
      for (std::size_t t = 0; t < combined.size(); ++t)
        combined.data[t] = mu * g_hat[k].data[t] + zeta_hat[k].data[t];
      RealPlane cropped = spectral::crop_mid(spectral::idft2(combined), crop);
      for (auto& v : cropped.data) v *= scale;
      h[k] = std::move(cropped);
    }
  });
  return h;
}

ComplexStack pad_and_transform(const RealStack& h, const spectral::CropMap& crop) {
  ComplexStack out(h.size());
  parallel_for(static_cast<int>(h.size()), [&](int begin, int end) {
    for (int k = begin; k < end; ++k) out[k] = spectral::dft2(spectral::zero_pad_center(h[k], crop));
  });
  return out;
}

void update_lagrangian(AdmmState& state, const ComplexStack& h_hat, double beta, double mu_max) {
  check_stack(h_hat, state.g_hat, "update_lagrangian");
  check_stack(state.zeta_hat, state.g_hat, "update_lagrangian");
  for (std::size_t k = 0; k < h_hat.size(); ++k) {
    auto& z = state.zeta_hat[k].data;
    const auto& g = state.g_hat[k].data;
    const auto& hh = h_hat[k].data;
    for (std::size_t t = 0; t < z.size(); ++t) z[t] += state.mu * (g[t] - hh[t]);
  }
  state.mu = std::min(mu_max, beta * state.mu);
}

namespace {

double relative_residual(const ComplexStack& g_hat, const ComplexStack& h_hat) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g_hat.size(); ++k)
    for (std::size_t t = 0; t < g_hat[k].size(); ++t) {
      num += std::norm(g_hat[k].data[t] - h_hat[k].data[t]);
      den += std::norm(g_hat[k].data[t]);
    }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

FilterBank admm_learn(const SampleSpectrum& x_hat_model, const DesiredResponse& y,
                      const BacfParams& params, const spectral::CropMap& crop,
                      AdmmTrace* trace) {
  if (x_hat_model.empty()) throw DimensionError("admm_learn: empty sample");
  for (const auto& p : x_hat_model)
    if (!p.same_dims(crop.full_w, crop.full_h))
      throw DimensionError("admm_learn: sample dims != crop full dims");

  AdmmState state{zeros_like(x_hat_model), zeros_like(x_hat_model), params.mu0};
  ComplexStack h_hat = zeros_like(x_hat_model);
  RealStack h;
  for (int i = 0; i < params.admm_iters; ++i) {
    state.g_hat = solve_g(x_hat_model, y.spectrum, state.zeta_hat, h_hat, state.mu);
    h = solve_h(state.g_hat, state.zeta_hat, state.mu, params.lambda, crop);
    h_hat = pad_and_transform(h, crop);
    update_lagrangian(state, h_hat, params.beta, params.mu_max);
    if (trace) {
      trace->h.push_back(h);
      trace->constraint_residual.push_back(relative_residual(state.g_hat, h_hat));
    }
  }
  return FilterBank{std::move(h), std::move(state.g_hat), crop};
}

SampleSpectrum update_model(const SampleSpectrum& model, const SampleSpectrum& x_new, double eta) {
  check_stack(x_new, model, "update_model");
  if (!(eta >= 0 && eta <= 1)) throw Error("update_model: eta must lie in [0, 1]");
  SampleSpectrum out = model;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t t = 0; t < out[k].size(); ++t)
      out[k].data[t] = (1.0 - eta) * model[k].data[t] + eta * x_new[k].data[t];
  return out;
}

double objective(const SampleSpectrum& x_hat, const ComplexPlane& y_hat, const RealStack& h,
                 const spectral::CropMap& crop, double lambda) {
  if (h.size() != x_hat.size()) throw DimensionError("objective: channel count mismatch");
  const ComplexStack h_hat = pad_and_transform(h, crop);
  double data = 0.0;
  for (std::size_t t = 0; t < y_hat.size(); ++t) {
    Complex r{};
    for (std::size_t k = 0; k < x_hat.size(); ++k)
      r += std::conj(h_hat[k].data[t]) * x_hat[k].data[t];
    data += std::norm(y_hat.data[t] - r);
  }
  double reg = 0.0;
  for (const auto& p : h)
    for (double v : p.data) reg += v * v;
  return 0.5 * data / static_cast<double>(y_hat.size()) + 0.5 * lambda * reg;
}

SampleSpectrum transform(const features::FeatureStack& f) {
  SampleSpectrum out(f.channels.size());
  parallel_for(f.num_channels(), [&](int begin, int end) {
    for (int k = begin; k < end; ++k) out[k] = spectral::dft2(f.channels[k]);
  });
  return out;
}

}  // namespace bacf::core
