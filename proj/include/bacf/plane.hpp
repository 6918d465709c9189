#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bacf/error.hpp"

namespace bacf {

using Complex = std::complex<double>;

/// Row-major 2D grid of samples.
template <typename T>
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Plane() = default;
  Plane(int w, int h, T fill = T{})
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}
  Plane(int w, int h, std::vector<T> values)
      : width(w), height(h), data(std::move(values)) {
    if (data.size() != static_cast<std::size_t>(w) * h)
      throw DimensionError("plane data length does not match width*height");
  }

  std::size_t size() const { return data.size(); }
  T& operator()(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
  const T& operator()(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::span<T> span() { return data; }
  std::span<const T> span() const { return data; }

  bool same_dims(int w, int h) const { return width == w && height == h; }
  template <typename U>
  bool same_dims(const Plane<U>& o) const { return width == o.width && height == o.height; }

  friend bool operator==(const Plane&, const Plane&) = default;
};

using RealPlane = Plane<double>;
using ComplexPlane = Plane<Complex>;

/// K same-sized planes, the layout shared by features, filters and spectra.
template <typename T>
using PlaneStack = std::vector<Plane<T>>;

using RealStack = PlaneStack<double>;
using ComplexStack = PlaneStack<Complex>;

}  // namespace bacf
