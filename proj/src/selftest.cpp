#include "bacf/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "bacf/bacf_core.hpp"
#include "bacf/box.hpp"
#include "bacf/detect.hpp"
#include "bacf/eval.hpp"
#include "bacf/oracle.hpp"
#include "bacf/rng.hpp"
#include "bacf/spectral.hpp"

namespace bacf::selftest {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

RealPlane random_plane(Rng& rng, int w, int h) {
  RealPlane p(w, h);
  for (auto& v : p.data) v = rng.normal();
  return p;
}

Complex random_complex(Rng& rng) { return {rng.normal(), rng.normal()}; }

template <typename T>
double max_abs_diff(const Plane<T>& a, const Plane<T>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

template <typename T>
double max_abs(const Plane<T>& a) {
  double m = 0.0;
  for (const auto& v : a.data) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

CheckResult check_dft_roundtrip(const SelftestOptions& opt) {
  Rng rng(opt.seed);
  double worst_roundtrip = 0.0, worst_naive = 0.0;
  for (auto [w, h] : {std::pair{4, 4}, {8, 8}, {5, 3}, {7, 6}, {1, 1}, {16, 1}}) {
    const RealPlane x = random_plane(rng, w, h);
    const ComplexPlane X = spectral::dft2(x);
    const RealPlane back = spectral::idft2(X);
    worst_roundtrip = std::max(worst_roundtrip, max_abs_diff(back, x) / max_abs(x));

    ComplexPlane xc(w, h);
    for (std::size_t i = 0; i < x.size(); ++i) xc.data[i] = x.data[i];
    const ComplexPlane ref = oracle::naive_dft2(xc);
    worst_naive = std::max(worst_naive, max_abs_diff(X, ref) / max_abs(ref));
  }
  const bool ok = worst_roundtrip < 1e-12 && worst_naive < 1e-12;
  return {"dft_roundtrip", ok,
          fmt("round-trip rel err %.3g, fft vs naive dft rel err %.3g (tol 1e-12)",
              worst_roundtrip, worst_naive)};
}

CheckResult check_crop_adjoint(const SelftestOptions& opt) {
  Rng rng(opt.seed + 1);
  double worst = 0.0;
  for (auto [fw, fh, cw, ch] :
       {std::array{4, 4, 2, 2}, {8, 8, 3, 5}, {7, 5, 4, 2}, {6, 6, 6, 6}, {9, 4, 1, 1}}) {
    const auto m = spectral::CropMap::centered(fw, fh, cw, ch);
    const RealPlane a = random_plane(rng, fw, fh);
    const RealPlane b = random_plane(rng, cw, ch);
    const double lhs = spectral::dot(spectral::crop_mid(a, m).data, b.data);
    const double rhs = spectral::dot(a.data, spectral::zero_pad_center(b, m).data);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return {"crop_adjoint", worst < 1e-12,
          fmt("|<Pa,b> - <a,P^T b>| rel %.3g (tol 1e-12)", worst)};
}

CheckResult check_shift_theorem(const SelftestOptions& opt) {
  Rng rng(opt.seed + 2);
  double worst = 0.0;
  for (auto [w, h, dr, dc] :
       {std::array{8, 8, 1, 3}, {5, 7, -2, 4}, {6, 4, 3, -1}, {16, 16, 7, 9}}) {
    const RealPlane x = random_plane(rng, w, h);
    const ComplexPlane X = spectral::dft2(x);
    const ComplexPlane S = spectral::dft2(spectral::circshift(x, dr, dc));
    ComplexPlane expect(w, h);
    for (int u = 0; u < h; ++u)
      for (int v = 0; v < w; ++v) {
        const double phase = 2.0 * std::numbers::pi *
                             (static_cast<double>(u) * dr / h + static_cast<double>(v) * dc / w);
        expect(u, v) = X(u, v) * std::polar(1.0, phase);
      }
    worst = std::max(worst, max_abs_diff(S, expect) / max_abs(X));
  }
  return {"shift_theorem", worst < 1e-10, fmt("max rel err %.3g (tol 1e-10)", worst)};
}

CheckResult check_correlate(const SelftestOptions& opt) {
  Rng rng(opt.seed + 3);
  double worst = 0.0;
  for (int n : {4, 8})
    for (int k : {1, 2}) {
      RealStack g, x;
      ComplexStack g_hat, x_hat;
      RealPlane ref(n, n);
      for (int c = 0; c < k; ++c) {
        g.push_back(random_plane(rng, n, n));
        x.push_back(random_plane(rng, n, n));
        g_hat.push_back(spectral::dft2(g.back()));
        x_hat.push_back(spectral::dft2(x.back()));
        const RealPlane part = oracle::circular_corr_naive(g.back(), x.back());
        for (std::size_t i = 0; i < ref.size(); ++i) ref.data[i] += part.data[i];
      }
      const RealPlane got = detect::correlate(g_hat, x_hat).response;
      worst = std::max(worst, max_abs_diff(got, ref) / max_abs(ref));
    }
  return {"correlate_vs_naive", worst < 1e-10,
          fmt("max rel err %.3g over 4x4/8x8, K=1/2 (tol 1e-10)", worst)};
}

CheckResult check_sherman_morrison(const SelftestOptions& opt) {
  constexpr int kBins = 1000, kChannels = 31;
  constexpr double T = kBins;
  Rng rng(opt.seed + 4);
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::vector<Complex> x(kChannels), zeta(kChannels), h(kChannels), g(kChannels);
  for (double mu : {1.0, 10.0, 1000.0})
    for (int b = 0; b < kBins; ++b) {
      for (int c = 0; c < kChannels; ++c) {
        x[c] = random_complex(rng);
        zeta[c] = random_complex(rng);
        h[c] = random_complex(rng);
      }
      const Complex y = random_complex(rng);
      core::solve_g_sm(x, y, zeta, h, mu, T * opt.sm_t_scale, g);
      const auto ref = core::solve_g_direct(x, y, zeta, h, mu, T);
      double num = 0.0, den = 0.0;
      for (int c = 0; c < kChannels; ++c) {
        num += std::norm(g[c] - ref[c]);
        den += std::norm(ref[c]);
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
  const double elapsed = seconds_since(t0);
  return {"sherman_morrison_vs_direct", worst < 1e-10 && elapsed < 1.0,
          fmt("max rel diff %.3g (tol 1e-10), %.3f s (limit 1 s)", worst, elapsed)};
}

CheckResult check_per_bin(const SelftestOptions& opt) {
  constexpr int kSide = 4, kChannels = 2;
  Rng rng(opt.seed + 5);
  const auto t0 = Clock::now();
  const auto crop = spectral::CropMap::centered(kSide, kSide, 2, 2);
  ComplexStack x_hat, zeta_hat;
  RealStack h;
  for (int c = 0; c < kChannels; ++c) {
    x_hat.push_back(spectral::dft2(random_plane(rng, kSide, kSide)));
    zeta_hat.push_back(spectral::dft2(random_plane(rng, kSide, kSide)));
    h.push_back(random_plane(rng, 2, 2));
  }
  const ComplexStack h_hat = core::pad_and_transform(h, crop);
  const ComplexPlane y_hat = spectral::dft2(random_plane(rng, kSide, kSide));
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 10.0}) {
    const auto got = core::solve_g(x_hat, y_hat, zeta_hat, h_hat, mu,
                                   core::GSolver::ShermanMorrison, opt.sm_t_scale);
    const auto ref = oracle::full_stacked_g_solve(x_hat, y_hat, zeta_hat, h_hat, mu);
    double num = 0.0, den = 0.0;
    for (int c = 0; c < kChannels; ++c)
      for (std::size_t t = 0; t < got[c].size(); ++t) {
        num += std::norm(got[c].data[t] - ref[c].data[t]);
        den += std::norm(ref[c].data[t]);
      }
    worst = std::max(worst, std::sqrt(num / den));
  }
  const double elapsed = seconds_since(t0);
  return {"per_bin_vs_dense", worst < 1e-10 && elapsed < 1.0,
          fmt("max rel diff %.3g (tol 1e-10), %.3f s (limit 1 s)", worst, elapsed)};
}

CheckResult check_admm_oracle(const SelftestOptions& opt) {
  constexpr int kSide = 4, kCrop = 2, kChannels = 2;
  Rng rng(opt.seed + 6);
  const auto t0 = Clock::now();
  const auto crop = spectral::CropMap::centered(kSide, kSide, kCrop, kCrop);
  RealStack x;
  ComplexStack x_hat;
  for (int c = 0; c < kChannels; ++c) {
    x.push_back(random_plane(rng, kSide, kSide));
    x_hat.push_back(spectral::dft2(x.back()));
  }
  const auto label = core::gaussian_label(kCrop, kCrop, kSide, kSide, kOracleLabelDivisor);

  core::BacfParams p;
  p.mu0 = kOracleMu0;
  p.beta = kOracleBeta;
  p.mu_max = kOracleMuMax;
  p.admm_iters = kOracleIters;
  const auto filter = core::admm_learn(x_hat, label, p, crop);

  const auto dense = oracle::build_dense_problem(x, spectral::idft2(label.spectrum), crop, p.lambda);
  const Eigen::VectorXd h_opt = oracle::spatial_ridge_solve(dense);
  const Eigen::VectorXd h_admm = oracle::flatten(filter.h);
  const double f_opt = oracle::dense_objective(dense, h_opt);
  const double f_admm = oracle::dense_objective(dense, h_admm);
  const double obj_rel = std::abs(f_admm - f_opt) / std::abs(f_opt);
  const double h_rel = (h_admm - h_opt).norm() / h_opt.norm();
  const double elapsed = seconds_since(t0);
  return {"admm_vs_spatial_oracle", obj_rel < 1e-4 && h_rel < 1e-3 && elapsed < 5.0,
          fmt("objective rel %.3g (tol 1e-4), h rel %.3g (tol 1e-3), %.3f s (limit 5 s)", obj_rel,
              h_rel, elapsed)};
}

CheckResult check_metrics(const SelftestOptions& opt) {
  std::vector<std::string> failures;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) failures.emplace_back(what);
  };
  const BoundingBox a{0, 0, 4, 4}, b{2, 0, 4, 4}, far{10, 10, 3, 3};
  expect(eval::iou(a, a) == 1.0, "iou identical");
  expect(eval::iou(a, far) == 0.0, "iou disjoint");
  expect(eval::iou(a, b) == 1.0 / 3.0, "iou overlap 1/3");

  const std::vector<double> ones(5, 1.0), zeros(5, 0.0), mixed{0.6, 0.4};
  const auto c1 = eval::success_curve(ones);
  bool ok = c1.rates.back() == 0.0;
  for (int i = 0; i + 1 < eval::kNumThresholds; ++i) ok = ok && c1.rates[i] == 1.0;
  expect(ok, "success curve all ones");
  expect(eval::success_rate_at_half(mixed) == 0.5, "success at 0.5");
  const auto c0 = eval::success_curve(zeros);
  expect(std::all_of(c0.rates.begin(), c0.rates.end(), [](double r) { return r == 0.0; }),
         "success curve all zeros");

  eval::SuccessCurve lin;
  for (int i = 0; i < eval::kNumThresholds; ++i) lin.rates[i] = 1.0 - i / 20.0;
  expect(std::abs(eval::auc(lin) - 0.5) < 1e-15, "auc linear");
  eval::SuccessCurve all1;
  all1.rates.fill(1.0);
  expect(eval::auc(all1) == 1.0, "auc ones");
  expect(eval::auc(c0) == 0.0, "auc zeros");

  Rng rng(opt.seed + 7);
  auto random_box = [&] {
    return BoundingBox{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(0, 30),
                       rng.uniform(0, 30)};
  };
  bool sym = true, range = true, monotone = true;
  std::vector<double> ious;
  for (int i = 0; i < 10000; ++i) {
    const BoundingBox p = random_box(), q = random_box();
    const double v = eval::iou(p, q);
    sym = sym && v == eval::iou(q, p);
    range = range && v >= 0.0 && v <= 1.0;
    ious.push_back(v);
    if (i % 100 == 99) {
      const auto c = eval::success_curve(ious);
      for (int t = 0; t + 1 < eval::kNumThresholds; ++t) monotone = monotone && c.rates[t] >= c.rates[t + 1];
    }
  }
  expect(sym, "iou symmetry (1e4 pairs)");
  expect(range, "iou range (1e4 pairs)");
  expect(monotone, "success curve monotone");

  std::string detail = failures.empty() ? "all examples and properties hold" : "failed:";
  for (const auto& f : failures) detail += " [" + f + "]";
  return {"metrics", failures.empty(), detail};
}

std::vector<CheckResult> run_all(const SelftestOptions& opt) {
  struct Entry {
    const char* name;
    CheckResult (*fn)(const SelftestOptions&);
    int samples;  // largest dense/naive reference window
    int channels;
  };
  const Entry checks[] = {
      {"dft_roundtrip", check_dft_roundtrip, 64, 1},
      {"crop_adjoint", check_crop_adjoint, 81, 1},
      {"shift_theorem", check_shift_theorem, 256, 1},
      {"correlate_vs_naive", check_correlate, 64, 2},
      {"sherman_morrison_vs_direct", check_sherman_morrison, 1, 31},
      {"per_bin_vs_dense", check_per_bin, 16, 2},
      {"admm_vs_spatial_oracle", check_admm_oracle, 16, 2},
      {"metrics", check_metrics, 1, 1},
  };
  std::vector<CheckResult> out;
  for (const Entry& c : checks) {
    if (c.samples > opt.max_samples || c.channels > opt.max_channels) {
      out.push_back({c.name, true,
                     "skipped: needs T=" + std::to_string(c.samples) + ", K=" +
                         std::to_string(c.channels) + " beyond the configured caps",
                     true});
      continue;
    }
    try {
      out.push_back(c.fn(opt));
    } catch (const std::exception& e) {
      out.push_back({c.name, false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

}  // namespace bacf::selftest
