#include "hypgrowth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::geom {

namespace {

void check_same_dimension(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension()) throw DomainError("point dimension mismatch");
}

}  // namespace

Point::Point(std::span<const double> horizontal, double height)
    : height_(height), dim_(static_cast<int>(horizontal.size()) + 1) {
  if (dim_ < 2 || dim_ > kMaxDimension) throw DomainError("dimension must lie in [2, 4]");
  if (!(height > 0.0) || !std::isfinite(height)) throw DomainError("height must be positive");
  std::copy(horizontal.begin(), horizontal.end(), horizontal_.begin());
}

Point::Point(std::initializer_list<double> horizontal, double height)
    : Point(std::span<const double>(horizontal.begin(), horizontal.size()), height) {}

Point Point::origin(int dimension) {
  std::array<double, kMaxDimension - 1> zero{};
  return Point(std::span<const double>(zero.data(), static_cast<std::size_t>(dimension - 1)), 1.0);
}

bool operator==(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension() || a.height() != b.height()) return false;
  for (int i = 0; i + 1 < a.dimension(); ++i)
    if (a.horizontal(i) != b.horizontal(i)) return false;
  return true;
}

double hyperbolic_distance(const Point& a, const Point& b) {
  check_same_dimension(a, b);
  double sq = (a.height() - b.height()) * (a.height() - b.height());
  for (int i = 0; i + 1 < a.dimension(); ++i) {
    const double diff = a.horizontal(i) - b.horizontal(i);
    sq += diff * diff;
  }
  // sinh(d/2) = |a-b| / (2 sqrt(h_a h_b)) stays accurate for nearby points.
  return 2.0 * std::asinh(std::sqrt(sq) / (2.0 * std::sqrt(a.height() * b.height())));
}

double d_eth(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("point dimension mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double d_eth(const Point& a, const Point& b) {
  check_same_dimension(a, b);
  return d_eth(a.horizontal(), b.horizontal());
}

double d_eth_to_axis(const Point& a) {
  double best = 0.0;
  for (double x : a.horizontal()) best = std::max(best, std::abs(x));
  return best;
}

double l2_horizontal_distance(const Point& a, const Point& b) {
  check_same_dimension(a, b);
  double sq = 0.0;
  for (int i = 0; i + 1 < a.dimension(); ++i) {
    const double diff = a.horizontal(i) - b.horizontal(i);
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

double segment_min_linf(std::span<const double> a, std::span<const double> b,
                        std::span<const double> c) {
  const std::size_t n = a.size();
  // f(t) = max_i |g_i(t)| with g_i affine; convex and piecewise linear, so the minimum sits
  // at an endpoint, a zero of some g_i, or a point where two pieces tie.
  auto g = [&](std::size_t i, double t) { return a[i] - c[i] + t * (b[i] - a[i]); };
  auto f = [&](double t) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(g(i, t)));
    return m;
  };
  double best = std::min(f(0.0), f(1.0));
  auto consider = [&](double t) {
    if (t > 0.0 && t < 1.0) best = std::min(best, f(t));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double slope = b[i] - a[i];
    const double offset = a[i] - c[i];
    if (slope != 0.0) consider(-offset / slope);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double slope_j = b[j] - a[j];
      const double offset_j = a[j] - c[j];
      for (double sign : {1.0, -1.0}) {
        const double denom = slope - sign * slope_j;
        if (denom != 0.0) consider((sign * offset_j - offset) / denom);
      }
    }
  }
  return best;
}

LorentzVector to_hyperboloid(const Point& p) {
  const int d = p.dimension();
  const double t = p.height();
  double s = t * t;
  for (double x : p.horizontal()) s += x * x;
  LorentzVector x(d + 1);
  x(0) = (1.0 + s) / (2.0 * t);
  for (int i = 0; i + 1 < d; ++i) x(i + 1) = p.horizontal(i) / t;
  x(d) = (1.0 - s) / (2.0 * t);
  return x;
}

Point from_hyperboloid(const LorentzVector& x) {
  const int d = static_cast<int>(x.size()) - 1;
  const double inv_t = x(0) + x(d);
  if (!(inv_t > 0.0)) throw DomainError("vector is not on the upper hyperboloid sheet");
  const double t = 1.0 / inv_t;
  std::array<double, kMaxDimension - 1> u{};
  for (int i = 0; i + 1 < d; ++i) u[static_cast<std::size_t>(i)] = x(i + 1) * t;
  return Point(std::span<const double>(u.data(), static_cast<std::size_t>(d - 1)), t);
}

double minkowski_dot(const LorentzVector& a, const LorentzVector& b) {
  return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

Slab::Slab(double h_, std::optional<double> delta_) : h(h_), delta(delta_) {
  if (!(h > 0.0) || h > 1.0) throw DomainError("slab height must lie in (0, 1]");
  if (delta && !(*delta > 0.0 && *delta < h)) throw DomainError("slab lower cut must lie in (0, h)");
}

bool Slab::contains(const Point& p, double tol) const {
  return p.height() <= h + tol && p.height() >= lower() - tol;
}

Box::Box(Point c, double r_, std::optional<double> h_) : center(c), r(r_), h(h_) {
  if (!(r > 0.0)) throw DomainError("box half-width must be positive");
}

bool in_box(const Point& p, const Box& box) {
  if (box.h && p.height() > *box.h) return false;
  return d_eth(box.center, p) <= box.r;
}

bool on_sphere(const Point& p, const Box& box, double tol) {
  return std::abs(d_eth(box.center, p) - box.r) <= tol;
}

std::vector<std::vector<double>> box_cover_centers(int dimension, double r, double r0) {
  if (dimension < 2 || !(r > 0.0) || !(r0 > 0.0)) throw DomainError("invalid cover request");
  const int per_axis = static_cast<int>(std::ceil(r / r0 - 1e-12));
  const int axes = dimension - 1;
  std::vector<std::vector<double>> centers;
  std::vector<int> idx(static_cast<std::size_t>(axes), 0);
  while (true) {
    std::vector<double> c(static_cast<std::size_t>(axes));
    for (int a = 0; a < axes; ++a)
      c[static_cast<std::size_t>(a)] = std::min(-r + r0 + 2.0 * r0 * idx[static_cast<std::size_t>(a)], r - r0);
    centers.push_back(std::move(c));
    int a = 0;
    while (a < axes && ++idx[static_cast<std::size_t>(a)] == per_axis) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == axes) break;
  }
  return centers;
}

double ball_radius_containing_box(const Point& center, std::span<const double> box_center,
                                  double r, double lo, double hi) {
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  std::array<double, kMaxDimension - 1> corner{};
  const auto c = center.horizontal();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double left = box_center[i] - r;
    const double right = box_center[i] + r;
    corner[i] = std::abs(left - c[i]) > std::abs(right - c[i]) ? left : right;
  }
  const std::span<const double> cs(corner.data(), c.size());
  return std::max(hyperbolic_distance(center, Point(cs, lo)), hyperbolic_distance(center, Point(cs, hi)));
}

}  // namespace hypgrowth::geom
