#pragma once

namespace bacf {

/// Axis-aligned box in pixels, top-left corner, 0-indexed, continuous
/// coordinates (pixel i spans [i, i + 1)).
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double center_x() const { return x + w / 2.0; }
  double center_y() const { return y + h / 2.0; }
  double area() const { return w * h; }

  static BoundingBox from_center(double cx, double cy, double w, double h) {
    return {cx - w / 2.0, cy - h / 2.0, w, h};
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

}  // namespace bacf
