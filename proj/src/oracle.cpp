#include "bacf/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bacf::oracle {

DenseProblem build_dense_problem(const RealStack& x, const RealPlane& y,
                                 const spectral::CropMap& crop, double lambda) {
  const int k_count = static_cast<int>(x.size());
  const int T = crop.full_size();
  const int D = crop.crop_size();
  if (T > kMaxRidgeSamples || k_count > kMaxRidgeChannels)
    throw Error("dense oracle size guard exceeded (T <= " + std::to_string(kMaxRidgeSamples) +
                ", K <= " + std::to_string(kMaxRidgeChannels) + ")");
  if (k_count < 1 || !y.same_dims(crop.full_w, crop.full_h))
    throw DimensionError("dense oracle: label dims != window dims");
  for (const auto& p : x)
    if (!p.same_dims(y)) throw DimensionError("dense oracle: channel dims != window dims");

  DenseProblem out{Eigen::MatrixXd(T, k_count * D), Eigen::VectorXd(T), lambda, k_count, crop};
  for (int jr = 0; jr < crop.full_h; ++jr) {
    for (int jc = 0; jc < crop.full_w; ++jc) {
      const int j = jr * crop.full_w + jc;
      out.y(j) = y(jr, jc);
      for (int k = 0; k < k_count; ++k) {
        for (int r = 0; r < crop.crop_h; ++r)
          for (int c = 0; c < crop.crop_w; ++c) {
            const int sr = (r + crop.origin_row + jr) % crop.full_h;
            const int sc = (c + crop.origin_col + jc) % crop.full_w;
            out.X(j, k * D + r * crop.crop_w + c) = x[k](sr, sc);
          }
        const RealPlane check = spectral::crop_mid(spectral::circshift(x[k], jr, jc), crop);
        for (int d = 0; d < D; ++d)
          if (check.data[d] != out.X(j, k * D + d))
            throw Error("dense oracle row disagrees with crop_mid of the shifted signal");
      }
    }
  }
  return out;
}

Eigen::VectorXd spatial_ridge_solve(const DenseProblem& p) {
  Eigen::MatrixXd normal = p.X.transpose() * p.X;
  normal.diagonal().array() += p.lambda;
  return normal.ldlt().solve(p.X.transpose() * p.y);
}

double dense_objective(const DenseProblem& p, const Eigen::VectorXd& h) {
  return 0.5 * (p.y - p.X * h).squaredNorm() + 0.5 * p.lambda * h.squaredNorm();
}

Eigen::VectorXd flatten(const RealStack& h) {
  Eigen::Index n = 0;
  for (const auto& p : h) n += static_cast<Eigen::Index>(p.size());
  Eigen::VectorXd v(n);
  Eigen::Index i = 0;
  for (const auto& p : h)
    for (double d : p.data) v(i++) = d;
  return v;
}

RealStack unflatten(const Eigen::VectorXd& v, int channels, int w, int h) {
  if (v.size() != static_cast<Eigen::Index>(channels) * w * h)
    throw DimensionError("unflatten: length mismatch");
  RealStack out(channels, RealPlane(w, h));
  Eigen::Index i = 0;
  for (auto& p : out)
    for (double& d : p.data) d = v(i++);
  return out;
}

RealPlane circular_corr_naive(const RealPlane& h, const RealPlane& x) {
  if (!h.same_dims(x)) throw DimensionError("circular_corr_naive: dims differ (pad h first)");
  RealPlane out(x.width, x.height);
  for (int tr = 0; tr < x.height; ++tr)
    for (int tc = 0; tc < x.width; ++tc) {
      double s = 0.0;
      for (int r = 0; r < x.height; ++r)
        for (int c = 0; c < x.width; ++c)
          s += h(r, c) * x((r + tr) % x.height, (c + tc) % x.width);
      out(tr, tc) = s;
    }
  return out;
}

namespace {

ComplexPlane naive_transform(const ComplexPlane& p, double sign) {
  ComplexPlane out(p.width, p.height);
  for (int u = 0; u < p.height; ++u)
    for (int v = 0; v < p.width; ++v) {
      Complex s{};
      for (int r = 0; r < p.height; ++r)
        for (int c = 0; c < p.width; ++c) {
          const double phase = sign * 2.0 * std::numbers::pi *
                               (static_cast<double>(u) * r / p.height + static_cast<double>(v) * c / p.width);
          s += p(r, c) * Complex(std::cos(phase), std::sin(phase));
        }
      out(u, v) = s;
    }
  return out;
}

// Row-major 2D DFT as a T x T matrix.
Eigen::MatrixXcd dft_matrix(int w, int h) {
  const int T = w * h;
  Eigen::MatrixXcd f(T, T);
  for (int u = 0; u < h; ++u)
    for (int v = 0; v < w; ++v)
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
          const double phase = -2.0 * std::numbers::pi *
                               (static_cast<double>(u) * r / h + static_cast<double>(v) * c / w);
          f(u * w + v, r * w + c) = Complex(std::cos(phase), std::sin(phase));
        }
  return f;
}

// (x * s)(tau) = sum_n s(n) x(tau - n), circular in 2D.
Eigen::MatrixXcd convolution_matrix(const ComplexPlane& x) {
  const int w = x.width, h = x.height, T = w * h;
  Eigen::MatrixXcd m(T, T);
  for (int tr = 0; tr < h; ++tr)
    for (int tc = 0; tc < w; ++tc)
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
          m(tr * w + tc, r * w + c) = x(((tr - r) % h + h) % h, ((tc - c) % w + w) % w);
  return m;
}

}  // namespace

ComplexPlane naive_dft2(const ComplexPlane& p) { return naive_transform(p, -1.0); }

ComplexPlane naive_idft2(const ComplexPlane& p) {
  ComplexPlane out = naive_transform(p, 1.0);
  for (auto& v : out.data) v /= static_cast<double>(p.size());
  return out;
}

ComplexStack full_stacked_g_solve(const ComplexStack& x_hat, const ComplexPlane& y_hat,
                                  const ComplexStack& zeta_hat, const ComplexStack& h_hat,
                                  double mu) {
  const int K = static_cast<int>(x_hat.size());
  const int w = y_hat.width, hgt = y_hat.height, T = w * hgt;
  if (T > kMaxStackedSamples || K > kMaxStackedChannels)
    throw Error("stacked oracle size guard exceeded (T <= " + std::to_string(kMaxStackedSamples) +
                ", K <= " + std::to_string(kMaxStackedChannels) + ")");
  if (K < 1 || zeta_hat.size() != x_hat.size() || h_hat.size() != x_hat.size())
    throw DimensionError("stacked oracle: channel count mismatch");

  const Eigen::MatrixXcd f = dft_matrix(w, hgt);
  const Eigen::MatrixXcd f_inv = f.adjoint() / static_cast<double>(T);

  // Unknown w = conj(g_hat); the data term is ||y_hat - B w||^2 / (2T).
  Eigen::MatrixXcd b(T, K * T);
  Eigen::VectorXcd zeta_c(K * T), h_c(K * T), yv(T);
  for (int t = 0; t < T; ++t) yv(t) = y_hat.data[t];
  for (int k = 0; k < K; ++k) {
    const ComplexPlane xs = naive_idft2(x_hat[k]);
    b.block(0, k * T, T, T) = f * convolution_matrix(xs) * f_inv;
    for (int t = 0; t < T; ++t) {
      zeta_c(k * T + t) = std::conj(zeta_hat[k].data[t]);
      h_c(k * T + t) = std::conj(h_hat[k].data[t]);
    }
  }

  Eigen::MatrixXcd a = b.adjoint() * b / static_cast<double>(T);
  a.diagonal().array() += mu;
  const Eigen::VectorXcd rhs = b.adjoint() * yv / static_cast<double>(T) - zeta_c + mu * h_c;
  const Eigen::VectorXcd sol = a.partialPivLu().solve(rhs);

  const double residual = (a * sol - rhs).norm() / std::max(1.0, rhs.norm());
  if (!(residual < 1e-10))
    throw Error("stacked oracle: dense solve residual " + std::to_string(residual));

  ComplexStack out(K, ComplexPlane(w, hgt));
  for (int k = 0; k < K; ++k)
    for (int t = 0; t < T; ++t) out[k].data[t] = std::conj(sol(k * T + t));
  return out;
}

}  // namespace bacf::oracle
