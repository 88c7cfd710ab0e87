#include "hypgrowth/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypgrowth::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kParamEps = 1e-12;

}  // namespace

EdgeCurve EdgeCurve::geodesic(const Point& a, const Point& b) {
  EdgeCurve c;
  c.a_ = a;
  c.b_ = b;
  const double horizontal = l2_horizontal_distance(a, b);
  const double scale = std::max({a.height(), b.height(), 1e-300});
  if (horizontal <= 1e-14 * scale) {
    c.kind_ = Kind::vertical;
    return c;
  }
  c.kind_ = Kind::arc;
  const int n = a.dimension() - 1;
  for (int i = 0; i < n; ++i)
    c.w_[static_cast<std::size_t>(i)] = (b.horizontal(i) - a.horizontal(i)) / horizontal;
  // Coordinates along w with a at 0 and b at `horizontal`.
  const double sb = horizontal;
  const double ya = a.height();
  const double yb = b.height();
  c.sc_ = (sb * sb + yb * yb - ya * ya) / (2.0 * sb);
  c.rho_ = std::hypot(c.sc_, ya);
  c.theta_a_ = std::atan2(ya, -c.sc_);
  c.theta_b_ = std::atan2(yb, sb - c.sc_);
  return c;
}

EdgeCurve EdgeCurve::straight(const Point& a, const Point& b) {
  EdgeCurve c;
  c.kind_ = Kind::straight;
  c.a_ = a;
  c.b_ = b;
  return c;
}

Point EdgeCurve::at(double s) const {
  if (s <= 0.0) return a_;
  if (s >= 1.0) return b_;
  return at_height(s, height_at(s));
}

double EdgeCurve::height_at(double s) const {
  switch (kind_) {
    case Kind::vertical:
      // Hyperbolic arclength parametrisation keeps the vertical case uniform.
      return a_.height() * std::pow(b_.height() / a_.height(), s);
    case Kind::straight:
      return a_.height() + s * (b_.height() - a_.height());
    case Kind::arc:
      return rho_ * std::sin(param_to_theta(s));
  }
  return 0.0;
}

Point EdgeCurve::at_height(double s, double height) const {
  const int n = a_.dimension() - 1;
  std::array<double, kMaxDimension - 1> u{};
  switch (kind_) {
    case Kind::vertical:
      for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = a_.horizontal(i);
      break;
    case Kind::straight:
      for (int i = 0; i < n; ++i)
        u[static_cast<std::size_t>(i)] = a_.horizontal(i) + s * (b_.horizontal(i) - a_.horizontal(i));
      break;
    case Kind::arc: {
      const double along = sc_ + rho_ * std::cos(param_to_theta(s));
      for (int i = 0; i < n; ++i)
        u[static_cast<std::size_t>(i)] = a_.horizontal(i) + along * w_[static_cast<std::size_t>(i)];
      break;
    }
  }
  return Point(std::span<const double>(u.data(), static_cast<std::size_t>(n)), height);
}

double EdgeCurve::max_height() const {
  if (kind_ == Kind::arc) {
    const double lo = std::min(theta_a_, theta_b_);
    const double hi = std::max(theta_a_, theta_b_);
    if (lo <= kPi / 2 && kPi / 2 <= hi) return rho_;
  }
  return std::max(a_.height(), b_.height());
}

double EdgeCurve::min_height() const { return std::min(a_.height(), b_.height()); }

std::vector<std::array<double, 2>> EdgeCurve::band_intervals(double lo, double hi) const {
  std::vector<std::array<double, 2>> out;
  auto push = [&](double s0, double s1) {
    s0 = std::clamp(s0, 0.0, 1.0);
    s1 = std::clamp(s1, 0.0, 1.0);
    if (s0 > s1) std::swap(s0, s1);
    if (s1 - s0 > kParamEps) out.push_back({s0, s1});
  };
  const double ya = a_.height();
  const double yb = b_.height();
  switch (kind_) {
    case Kind::vertical: {
      // height = ya (yb/ya)^s; solve for the cut heights in log space.
      if (ya == yb) {
        if (ya >= lo && ya <= hi) push(0.0, 1.0);
        break;
      }
      const double la = std::log(ya);
      const double lb = std::log(yb);
      auto param = [&](double y) { return (std::log(y) - la) / (lb - la); };
      double s_lo = lo > 0.0 ? param(lo) : (lb > la ? -std::numeric_limits<double>::infinity()
                                                      : std::numeric_limits<double>::infinity());
      double s_hi = std::isfinite(hi) ? param(hi) : (lb > la ? std::numeric_limits<double>::infinity()
                                                              : -std::numeric_limits<double>::infinity());
      push(std::max(0.0, std::min(s_lo, s_hi)), std::min(1.0, std::max(s_lo, s_hi)));
      break;
    }
    case Kind::straight: {
      if (ya == yb) {
        if (ya >= lo && ya <= hi) push(0.0, 1.0);
        break;
      }
      const double s_lo = (lo - ya) / (yb - ya);
      const double s_hi = std::isfinite(hi) ? (hi - ya) / (yb - ya)
                                            : (yb > ya ? std::numeric_limits<double>::infinity()
                                                       : -std::numeric_limits<double>::infinity());
      push(std::max(0.0, std::min(s_lo, s_hi)), std::min(1.0, std::max(s_lo, s_hi)));
      break;
    }
    case Kind::arc: {
      // {lo <= rho sin(theta) <= hi} is [al, ah] U [pi-ah, pi-al] in theta.
      if (lo > rho_) break;
      const double al = lo > 0.0 ? std::asin(std::min(1.0, lo / rho_)) : 0.0;
      const double ah = hi < rho_ ? std::asin(hi / rho_) : kPi / 2;
      const double t0 = std::min(theta_a_, theta_b_);
      const double t1 = std::max(theta_a_, theta_b_);
      std::vector<std::array<double, 2>> pieces;
      if (ah >= kPi / 2) {
        pieces.push_back({al, kPi - al});
      } else {
        pieces.push_back({al, ah});
        pieces.push_back({kPi - ah, kPi - al});
      }
      for (const auto& piece : pieces) {
        const double u0 = std::max(piece[0], t0);
        const double u1 = std::min(piece[1], t1);
        if (u1 > u0) push(theta_to_param(u0), theta_to_param(u1));
      }
      std::sort(out.begin(), out.end());
      break;
    }
  }
  return out;
}

}  // namespace hypgrowth::geom
