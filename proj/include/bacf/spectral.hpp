#pragma once

// Discrete Fourier transforms, Hann windows and the centered crop / zero-pad
// operator pair.
//
// Transform convention: dft2 is the unnormalized forward DFT
//   X(u,v) = sum_{r,c} x(r,c) exp(-2*pi*i*(u*r/H + v*c/W))
// and idft2 carries the full 1/T factor (T = W*H). With this convention
// Parseval reads sum |x|^2 = (1/T) sum |X|^2, and the DC bin of a constant
// plane equals T times its value.

#include <span>

#include "bacf/plane.hpp"

namespace bacf::spectral {

/// Scale applied to the DC bin of a 1x1 transform; see the header comment.
inline constexpr double kDcScale = 1.0;

enum class SymmetryCheck { Enforce, Skip };

/// Default tolerance for the conjugate-symmetry test in idft2, relative to
/// the largest bin magnitude.
inline constexpr double kSymmetryTolerance = 1e-9;

ComplexPlane dft2(const RealPlane& p);
ComplexPlane dft2(const ComplexPlane& p);

/// Inverse transform returning the real part. With SymmetryCheck::Enforce a
/// spectrum whose conjugate-symmetry defect exceeds kSymmetryTolerance throws
/// SymmetryError.
RealPlane idft2(const ComplexPlane& p, SymmetryCheck check = SymmetryCheck::Enforce);
ComplexPlane idft2_complex(const ComplexPlane& p);

/// Largest |X(t) - conj(X(-t))| divided by max |X| (0 for an all-zero plane).
double symmetry_defect(const ComplexPlane& p);

RealPlane hann2(int w, int h);

/// Circular shift: out(r, c) = p((r + dr) mod H, (c + dc) mod W).
template <typename T>
Plane<T> circshift(const Plane<T>& p, int dr, int dc);

struct CropMap {
  int full_w = 0;
  int full_h = 0;
  int crop_w = 0;
  int crop_h = 0;
  int origin_row = 0;
  int origin_col = 0;

  /// Centered crop: origin = floor((full - crop) / 2) per axis.
  static CropMap centered(int full_w, int full_h, int crop_w, int crop_h);

  int full_size() const { return full_w * full_h; }
  int crop_size() const { return crop_w * crop_h; }
  friend bool operator==(const CropMap&, const CropMap&) = default;
};

template <typename T>
Plane<T> crop_mid(const Plane<T>& p, const CropMap& m);

template <typename T>
Plane<T> zero_pad_center(const Plane<T>& p, const CropMap& m);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace bacf::spectral
