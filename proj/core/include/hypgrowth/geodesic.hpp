#pragma once

#include <array>
#include <vector>

#include "hypgrowth/geometry.hpp"

namespace hypgrowth::geom {

// Parametrised edge curve between two points: a geodesic (vertical segment or arc of a
// semicircle orthogonal to the boundary) or a straight Euclidean segment.
class EdgeCurve {
 public:
  static EdgeCurve geodesic(const Point& a, const Point& b);
  static EdgeCurve straight(const Point& a, const Point& b);

  // Parameter interval [0, 1] maps a -> b.
  Point at(double s) const;
  double height_at(double s) const;
  double max_height() const;
  double min_height() const;

  // Maximal parameter sub-intervals on which lo <= height <= hi (lo may be 0, hi may be inf).
  // Intervals of zero length are dropped.
  std::vector<std::array<double, 2>> band_intervals(double lo, double hi) const;

  // Exact point of the curve at parameter s with its height snapped to `height`.
  Point at_height(double s, double height) const;

 private:
  enum class Kind { vertical, arc, straight };
  Kind kind_ = Kind::straight;
  Point a_, b_;
  // arc data: horizontal direction w, centre offset and radius along w, angles at a and b
  std::array<double, kMaxDimension - 1> w_{};
  double sc_ = 0, rho_ = 0, theta_a_ = 0, theta_b_ = 0;

  double param_to_theta(double s) const { return theta_a_ + s * (theta_b_ - theta_a_); }
  double theta_to_param(double th) const { return (th - theta_a_) / (theta_b_ - theta_a_); }
};

}  // namespace hypgrowth::geom
