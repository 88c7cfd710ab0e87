#pragma once

#include <optional>
#include <random>
#include <span>

#include "hypgrowth/geometry.hpp"

namespace hypgrowth::geom {

// u -> k Q u + x, t -> k t.  Kept alongside the Lorentz matrix so that scalings,
// translations and horizontal rotations act exactly on half-space coordinates.
struct Similarity {
  double k = 1.0;
  Orthogonal q;
  std::array<double, kMaxDimension - 1> x{};
};

class Isometry {
 public:
  static Isometry identity(int dimension);
  static Isometry scale_translate(double k, std::span<const double> x);
  // Rotation about o whose derivative at o (in half-space coordinates) is R.
  static Isometry rotation_about_origin(const Orthogonal& r);
  // The isometry with Phi(o) = (0,...,0,h) and derivative h R at o.
  static Isometry phi(double h, const Orthogonal& r);
  static Isometry from_lorentz(const LorentzMatrix& m);

  int dimension() const { return static_cast<int>(lorentz_.rows()) - 1; }
  const LorentzMatrix& lorentz() const { return lorentz_; }
  const std::optional<Similarity>& similarity() const { return similarity_; }

  Point apply(const Point& p) const;
  LorentzVector apply(const LorentzVector& x) const { return lorentz_ * x; }

  // (*this) o other
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const;

  // max |M^T J M - J|
  double drift() const;

 private:
  Isometry(LorentzMatrix m, std::optional<Similarity> s);
  void renormalize_if_needed();

  LorentzMatrix lorentz_;
  std::optional<Similarity> similarity_;
};

Orthogonal rotation2(double angle);
Orthogonal random_orthogonal(int n, std::mt19937_64& rng);
bool is_orthogonal(const Orthogonal& r, double tol = 1e-9);

}  // namespace hypgrowth::geom
