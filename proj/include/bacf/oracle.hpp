#pragma once

// Brute-force references for the spectral learner. Everything here is dense
// and O(T^2) or worse; size guards keep it to test-sized problems.

#include <Eigen/Dense>

#include "bacf/plane.hpp"
#include "bacf/spectral.hpp"

namespace bacf::oracle {

inline constexpr int kMaxRidgeSamples = 256;
inline constexpr int kMaxRidgeChannels = 4;
inline constexpr int kMaxStackedSamples = 16;
inline constexpr int kMaxStackedChannels = 2;

/// Cropped-shift regression problem: row j of X holds, for each channel k,
/// crop_mid of x_k circularly shifted by j (row-major j over the window).
struct DenseProblem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  double lambda = 0.0;
  int channels = 0;
  spectral::CropMap crop;
};

/// Builds the problem by direct indexing and checks each row against
/// spectral::crop_mid(spectral::circshift(...)). Throws Error if the size
/// guard is exceeded.
DenseProblem build_dense_problem(const RealStack& x, const RealPlane& y,
                                 const spectral::CropMap& crop, double lambda);

/// Solves (X^T X + lambda I) h = X^T y.
Eigen::VectorXd spatial_ridge_solve(const DenseProblem& p);

/// 1/2 ||y - X h||^2 + lambda/2 ||h||^2.
double dense_objective(const DenseProblem& p, const Eigen::VectorXd& h);

Eigen::VectorXd flatten(const RealStack& h);
RealStack unflatten(const Eigen::VectorXd& v, int channels, int w, int h);

/// out(tau) = sum_n h(n) x(n + tau), circular, O(T^2).
RealPlane circular_corr_naive(const RealPlane& h, const RealPlane& x);

ComplexPlane naive_dft2(const ComplexPlane& p);
ComplexPlane naive_idft2(const ComplexPlane& p);

/// Solves the whole g-step as one dense KT x KT system. The data matrix is
/// assembled as F * Conv(x_k) * F^-1 from explicit DFT and circular
/// convolution matrices rather than from the per-bin structure.
ComplexStack full_stacked_g_solve(const ComplexStack& x_hat, const ComplexPlane& y_hat,
                                  const ComplexStack& zeta_hat, const ComplexStack& h_hat,
                                  double mu);

}  // namespace bacf::oracle
