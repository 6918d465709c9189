#include <gtest/gtest.h>

#include <numbers>

#include "bacf/oracle.hpp"
#include "bacf/spectral.hpp"
#include "test_util.hpp"

namespace bacf {
namespace {

using namespace spectral;
using testing::max_abs;
using testing::max_abs_diff;
using testing::random_plane;

ComplexPlane to_complex(const RealPlane& p) {
  ComplexPlane out(p.width, p.height);
  for (std::size_t i = 0; i < p.size(); ++i) out.data[i] = p.data[i];
  return out;
}

TEST(Dft, SingleSampleScalesByDcConstant) {
  RealPlane p(1, 1);
  p.data[0] = 5.0;
  const auto X = dft2(p);
  EXPECT_EQ(X.data[0], Complex(5.0 * kDcScale, 0.0));
}

TEST(Dft, ConstantPlaneHasOnlyDc) {
  RealPlane p(6, 4);
  std::fill(p.data.begin(), p.data.end(), 2.5);
  const auto X = dft2(p);
  EXPECT_NEAR(X.data[0].real(), 2.5 * 24, 1e-12);
  for (std::size_t i = 1; i < X.size(); ++i) EXPECT_LT(std::abs(X.data[i]), 1e-12);
}

TEST(Dft, RoundTripAndNaiveAgreement) {
  Rng rng(11);
  for (auto [w, h] : {std::pair{8, 8}, {5, 3}, {1, 7}, {12, 10}}) {
    const RealPlane x = random_plane(rng, w, h);
    const auto X = dft2(x);
    EXPECT_LT(max_abs_diff(idft2(X), x) / max_abs(x), 1e-12);
    const auto ref = oracle::naive_dft2(to_complex(x));
    EXPECT_LT(max_abs_diff(X, ref) / max_abs(ref), 1e-12);
  }
}

TEST(Idft, DeltaRestored) {
  RealPlane d(5, 4);
  d(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(idft2(dft2(d)), d), 1e-15);
}

TEST(Idft, ZeroSpectrumGivesZeroPlane) {
  const auto out = idft2(ComplexPlane(4, 4));
  for (double v : out.data) EXPECT_EQ(v, 0.0);
}

TEST(Idft, MatchesNaiveInverse) {
  Rng rng(12);
  const auto X = dft2(random_plane(rng, 4, 4));
  const auto ref = oracle::naive_idft2(X);
  const auto got = idft2(X);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got.data[i], ref.data[i].real(), 1e-12);
    EXPECT_NEAR(ref.data[i].imag(), 0.0, 1e-12);
  }
}

TEST(Idft, AsymmetricSpectrumThrows) {
  ComplexPlane X(4, 4);
  X(0, 1) = Complex(1.0, 0.0);
  EXPECT_THROW(idft2(X), SymmetryError);
  EXPECT_NO_THROW(idft2(X, SymmetryCheck::Skip));
}

TEST(Dft, Linearity) {
  Rng rng(13);
  const auto x = random_plane(rng, 6, 5), y = random_plane(rng, 6, 5);
  const double a = 1.7, b = -0.3;
  RealPlane z(6, 5);
  for (std::size_t i = 0; i < z.size(); ++i) z.data[i] = a * x.data[i] + b * y.data[i];
  const auto X = dft2(x), Y = dft2(y), Z = dft2(z);
  double worst = 0.0;
  for (std::size_t i = 0; i < Z.size(); ++i)
    worst = std::max(worst, std::abs(Z.data[i] - (a * X.data[i] + b * Y.data[i])));
  EXPECT_LT(worst / max_abs(Z), 1e-12);
}

TEST(Dft, ShiftTheorem) {
  Rng rng(14);
  const int w = 7, h = 6, dr = 2, dc = -3;
  const auto x = random_plane(rng, w, h);
  const auto X = dft2(x);
  const auto S = dft2(circshift(x, dr, dc));
  for (int u = 0; u < h; ++u)
    for (int v = 0; v < w; ++v) {
      const double phase = 2 * std::numbers::pi * (double(u) * dr / h + double(v) * dc / w);
      EXPECT_LT(std::abs(S(u, v) - X(u, v) * std::polar(1.0, phase)), 1e-10 * max_abs(X));
    }
}

TEST(Circshift, IndexConvention) {
  RealPlane p(3, 2);
  for (std::size_t i = 0; i < p.size(); ++i) p.data[i] = double(i);
  const auto s = circshift(p, 1, 2);
  EXPECT_EQ(s(0, 0), p(1, 2));
  EXPECT_EQ(s(1, 2), p(0, 1));
}

TEST(Hann, DegenerateIsOne) {
  EXPECT_EQ(hann2(1, 1).data, std::vector<double>{1.0});
  const auto row = hann2(5, 1);
  EXPECT_DOUBLE_EQ(row(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(row(0, 0), 0.0);
}

TEST(Hann, OddCenterIsOne) { EXPECT_DOUBLE_EQ(hann2(3, 3)(1, 1), 1.0); }

TEST(Hann, MatchesOuterProductFormula) {
  const auto w = hann2(8, 8);
  auto f = [](int n) { return 0.5 * (1 - std::cos(2 * std::numbers::pi * n / 7.0)); };
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) EXPECT_NEAR(w(r, c), f(r) * f(c), 1e-15);
}

TEST(Crop, CenteredOrigin) {
  const auto m = CropMap::centered(8, 5, 4, 2);
  EXPECT_EQ(m.origin_col, 2);
  EXPECT_EQ(m.origin_row, 1);
  EXPECT_THROW(CropMap::centered(4, 4, 5, 2), DimensionError);
}

TEST(Crop, FullSizeIsIdentity) {
  Rng rng(15);
  const auto p = random_plane(rng, 4, 4);
  EXPECT_EQ(crop_mid(p, CropMap::centered(4, 4, 4, 4)), p);
}

TEST(Crop, OneDimensionalExample) {
  RealPlane p(8, 1);
  for (int i = 0; i < 8; ++i) p.data[i] = i;
  const auto m = CropMap::centered(8, 1, 4, 1);
  EXPECT_EQ(crop_mid(p, m).data, (std::vector<double>{2, 3, 4, 5}));
  RealPlane q(4, 1);
  q.data = {2, 3, 4, 5};
  EXPECT_EQ(zero_pad_center(q, m).data, (std::vector<double>{0, 0, 2, 3, 4, 5, 0, 0}));
}

TEST(Crop, ZerosStayZero) {
  const auto m = CropMap::centered(6, 6, 3, 3);
  for (double v : crop_mid(RealPlane(6, 6), m).data) EXPECT_EQ(v, 0.0);
  for (double v : zero_pad_center(RealPlane(3, 3), m).data) EXPECT_EQ(v, 0.0);
}

TEST(Crop, PadThenCropIsIdentity) {
  Rng rng(16);
  const auto m = CropMap::centered(9, 9, 3, 3);
  const auto p = random_plane(rng, 3, 3);
  EXPECT_EQ(crop_mid(zero_pad_center(p, m), m), p);
}

TEST(Crop, PadOfCropIsProjector) {
  Rng rng(17);
  const auto m = CropMap::centered(7, 6, 3, 4);
  const auto x = random_plane(rng, 7, 6);
  const auto y = zero_pad_center(crop_mid(x, m), m);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 7; ++c) {
      const bool inside = r >= m.origin_row && r < m.origin_row + 4 && c >= m.origin_col &&
                          c < m.origin_col + 3;
      EXPECT_EQ(y(r, c), inside ? x(r, c) : 0.0);
    }
}

TEST(Crop, Adjointness) {
  Rng rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const int fw = 2 + trial % 9, fh = 1 + trial % 7;
    const int cw = 1 + trial % fw, ch = 1 + (trial / 3) % fh;
    const auto m = CropMap::centered(fw, fh, cw, ch);
    const auto x = random_plane(rng, fw, fh);
    const auto y = random_plane(rng, cw, ch);
    const double lhs = dot(crop_mid(x, m).data, y.data);
    const double rhs = dot(x.data, zero_pad_center(y, m).data);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Symmetry, RealSignalSpectrumIsSymmetric) {
  Rng rng(19);
  EXPECT_LT(symmetry_defect(dft2(random_plane(rng, 5, 6))), 1e-14);
}

}  // namespace
}  // namespace bacf
