#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hypgrowth::geom {

inline constexpr int kMaxDimension = 4;

using LorentzVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDimension + 1, 1>;
using LorentzMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDimension + 1, kMaxDimension + 1>;
using Orthogonal =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDimension, kMaxDimension>;

// A point of the upper half-space model: horizontal coordinates in R^{d-1} and a positive height.
class Point {
 public:
  Point() = default;
  Point(std::span<const double> horizontal, double height);
  Point(std::initializer_list<double> horizontal, double height);

  static Point origin(int dimension);

  int dimension() const { return dim_; }
  std::span<const double> horizontal() const {
    return {horizontal_.data(), static_cast<std::size_t>(dim_ - 1)};
  }
  double horizontal(int i) const { return horizontal_[static_cast<std::size_t>(i)]; }
  double height() const { return height_; }

 private:
  std::array<double, kMaxDimension - 1> horizontal_{};
  double height_ = 1.0;
  int dim_ = 0;
};

bool operator==(const Point& a, const Point& b);

double hyperbolic_distance(const Point& a, const Point& b);

// l-infinity distance between the horizontal projections.
double d_eth(const Point& a, const Point& b);
double d_eth(std::span<const double> a, std::span<const double> b);
double d_eth_to_axis(const Point& a);  // distance to the vertical line through o

double l2_horizontal_distance(const Point& a, const Point& b);

// Minimum over the segment [a,b] of the l-infinity distance to c (all horizontal vectors).
double segment_min_linf(std::span<const double> a, std::span<const double> b,
                        std::span<const double> c);

LorentzVector to_hyperboloid(const Point& p);
Point from_hyperboloid(const LorentzVector& x);
double minkowski_dot(const LorentzVector& a, const LorentzVector& b);

// Height band [lower, h]; the lower cut is absent for the plain slab L^h.
struct Slab {
  double h = 1.0;
  std::optional<double> delta;

  Slab() = default;
  explicit Slab(double h_, std::optional<double> delta_ = std::nullopt);
  double lower() const { return delta.value_or(0.0); }
  bool contains(const Point& p, double tol = 1e-9) const;
};

struct Box {
  Point center;
  double r = 1.0;
  std::optional<double> h;

  Box(Point c, double r_, std::optional<double> h_ = std::nullopt);
};

bool in_box(const Point& p, const Box& box);
bool on_sphere(const Point& p, const Box& box, double tol);

// Horizontal centers of the ceil(r/r0)^{d-1} translates of B_{r0} that cover B_r.
std::vector<std::vector<double>> box_cover_centers(int dimension, double r, double r0);

// Smallest hyperbolic radius about `center` that contains every point of the band
// [-r, r]^{d-1} x [lo, hi] around horizontal position `box_center`.
double ball_radius_containing_box(const Point& center, std::span<const double> box_center,
                                  double r, double lo, double hi);

}  // namespace hypgrowth::geom
