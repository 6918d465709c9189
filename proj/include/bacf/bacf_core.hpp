#pragma once

// Background-aware correlation filter learning.
//
// Conventions (all transforms are spectral::dft2, unnormalized forward):
//
//   response(tau) = sum_k sum_n g_k(n) x_k(n + tau)       (circular)
//   response_hat  = sum_k conj(g_hat_k) * x_hat_k
//
// The learning objective for a filter h with cropped support (K channels of
// crop_w x crop_h) over a T-sample training window is
//
//   E(h) = 1/2 sum_tau (y(tau) - sum_k <pad(h_k), x_k(. + tau)>)^2
//          + lambda/2 ||h||^2.
//
// It is split as g_hat = dft2(pad(h)) and solved by ADMM on
//
//   L = 1/(2T) ||y_hat - sum_k conj(g_hat_k) x_hat_k||^2 + lambda/2 ||h||^2
//       + Re<zeta_hat, g_hat - h_hat> + mu/2 ||g_hat - h_hat||^2
//
// where the 1/T factor is Parseval for the unnormalized transform. This makes
// every numeric factor explicit:
//
//   g-step, per bin t:  (x x^H + T mu I) g = conj(y) x - T zeta + T mu h_hat
//   h-step:             h = crop(mu g + l) / (mu + lambda / T),
//                       g = idft2(g_hat), l = idft2(zeta_hat)
//   dual step:          zeta_hat += mu (g_hat - h_hat),  mu = min(mu_max, beta mu)
//
// The label y peaks at zero shift (sample (0, 0)), the position where the
// centred filter support lines up with the centred target.

#include <span>
#include <vector>

#include "bacf/features.hpp"
#include "bacf/plane.hpp"
#include "bacf/spectral.hpp"

namespace bacf::core {

struct BacfParams {
  double lambda = 0.001;
  int admm_iters = 2;
  double mu0 = 1.0;
  double beta = 10.0;
  double mu_max = 1000.0;
  double eta = 0.0125;
  double label_bandwidth_divisor = 16.0;
  int cell = 4;
  int num_scales = 5;
  double scale_step = 1.01;
  double search_area_factor = 5.0;
  /// Search windows larger than this (pixels^2) are learned on a resampled,
  /// smaller model grid.
  double max_window_area = 200.0 * 200.0;
  features::FeatureKind features = features::FeatureKind::Fhog;

  /// Throws Error naming the first violated constraint.
  void validate() const;
  friend bool operator==(const BacfParams&, const BacfParams&) = default;
};

struct DesiredResponse {
  ComplexPlane spectrum;
  int peak_row = 0;
  int peak_col = 0;
};

/// Signed circular offset of index i on an axis of length n, in
/// [-floor(n/2), ceil(n/2) - 1].
int wrapped_offset(int i, int n);

/// Gaussian label with sigma = sqrt(target_w * target_h) / divisor (all in
/// cells), peak value 1 at zero shift, wrapped circularly.
DesiredResponse gaussian_label(double target_w, double target_h, int full_w, int full_h,
                               double divisor);

using SampleSpectrum = ComplexStack;

struct FilterBank {
  RealStack h;
  ComplexStack g_hat;
  spectral::CropMap crop;
};

struct AdmmState {
  ComplexStack g_hat;
  ComplexStack zeta_hat;
  double mu = 1.0;
};

/// Exact solve of (x x^H + T mu I) g = y x - T zeta + T mu h with a dense
/// K x K factorisation.
std::vector<Complex> solve_g_direct(std::span<const Complex> x, Complex y,
                                    std::span<const Complex> zeta, std::span<const Complex> h,
                                    double mu, double T);

/// Same system through Sherman-Morrison with A = T mu I:
///   g = (y x / T - zeta + mu h) / mu - x (y s_x / T - s_l + mu s_h) / (mu b)
/// with s_x = x^H x, s_l = x^H zeta, s_h = x^H h and b = s_x + T mu.
void solve_g_sm(std::span<const Complex> x, Complex y, std::span<const Complex> zeta,
                std::span<const Complex> h, double mu, double T, std::span<Complex> out);
std::vector<Complex> solve_g_sm(std::span<const Complex> x, Complex y,
                                std::span<const Complex> zeta, std::span<const Complex> h,
                                double mu, double T);

enum class GSolver { ShermanMorrison, Direct };

/// The g-step over every bin. `y_hat` is the label spectrum; the per-bin
/// right-hand side uses its conjugate. `t_scale` multiplies the T used by
/// the solver and exists only so tests can corrupt it.
ComplexStack solve_g(const SampleSpectrum& x_hat, const ComplexPlane& y_hat,
                     const ComplexStack& zeta_hat, const ComplexStack& h_hat, double mu,
                     GSolver solver = GSolver::ShermanMorrison, double t_scale = 1.0);

RealStack solve_h(const ComplexStack& g_hat, const ComplexStack& zeta_hat, double mu,
                  double lambda, const spectral::CropMap& crop);

/// dft2 of each zero-padded channel.
ComplexStack pad_and_transform(const RealStack& h, const spectral::CropMap& crop);

void update_lagrangian(AdmmState& state, const ComplexStack& h_hat, double beta, double mu_max);

/// Per-iteration diagnostics of admm_learn.
struct AdmmTrace {
  std::vector<RealStack> h;
  /// ||g_hat - dft2(pad(h))|| / ||g_hat|| after each iteration.
  std::vector<double> constraint_residual;
};

/// Runs params.admm_iters iterations of g-step, h-step, dual update from a
/// zero start with mu = mu0.
FilterBank admm_learn(const SampleSpectrum& x_hat_model, const DesiredResponse& y,
                      const BacfParams& params, const spectral::CropMap& crop,
                      AdmmTrace* trace = nullptr);

/// (1 - eta) model + eta x_new, elementwise.
SampleSpectrum update_model(const SampleSpectrum& model, const SampleSpectrum& x_new, double eta);

/// Training objective E(h) evaluated through the spectra.
double objective(const SampleSpectrum& x_hat, const ComplexPlane& y_hat, const RealStack& h,
                 const spectral::CropMap& crop, double lambda);

SampleSpectrum transform(const features::FeatureStack& f);

}  // namespace bacf::core
