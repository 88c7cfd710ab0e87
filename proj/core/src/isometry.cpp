#include "hypgrowth/isometry.hpp"

#include <cmath>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::geom {

namespace {

LorentzMatrix minkowski_form(int n) {
  LorentzMatrix j = LorentzMatrix::Identity(n, n);
  j(0, 0) = -1.0;
  return j;
}

// Lorentz matrix of the horizontal translation u -> u + x.
LorentzMatrix translation_matrix(std::span<const double> x) {
  const int d = static_cast<int>(x.size()) + 1;
  LorentzMatrix m = LorentzMatrix::Identity(d + 1, d + 1);
  double sq = 0.0;
  for (double xi : x) sq += xi * xi;
  m(0, 0) += sq / 2.0;
  m(0, d) += sq / 2.0;
  m(d, 0) -= sq / 2.0;
  m(d, d) -= sq / 2.0;
  for (int i = 0; i + 1 < d; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    m(0, i + 1) += xi;
    m(d, i + 1) -= xi;
    m(i + 1, 0) += xi;
    m(i + 1, d) += xi;
  }
  return m;
}

// Lorentz matrix of the scaling y -> k y (a translation along the vertical axis).
LorentzMatrix scaling_matrix(int d, double k) {
  const double s = std::log(k);
  LorentzMatrix m = LorentzMatrix::Identity(d + 1, d + 1);
  m(0, 0) = std::cosh(s);
  m(0, d) = -std::sinh(s);
  m(d, 0) = -std::sinh(s);
  m(d, d) = std::cosh(s);
  return m;
}

// Rotation about o: the half-space chart at o has derivative diag(1,...,1,-1).
LorentzMatrix rotation_matrix(const Orthogonal& r) {
  const int d = static_cast<int>(r.rows());
  LorentzMatrix m = LorentzMatrix::Identity(d + 1, d + 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double si = (i == d - 1) ? -1.0 : 1.0;
      const double sj = (j == d - 1) ? -1.0 : 1.0;
      m(i + 1, j + 1) = si * r(i, j) * sj;
    }
  return m;
}

// Orthonormalize columns with respect to the Minkowski form.
void lorentz_gram_schmidt(LorentzMatrix& m) {
  const int n = static_cast<int>(m.cols());
  for (int c = 0; c < n; ++c) {
    LorentzVector v = m.col(c);
    for (int prev = 0; prev < c; ++prev) {
      const LorentzVector u = m.col(prev);
      const double norm_u = prev == 0 ? -1.0 : 1.0;
      v -= (minkowski_dot(v, u) / norm_u) * u;
    }
    const double q = minkowski_dot(v, v);
    v /= std::sqrt(std::abs(q));
    m.col(c) = v;
  }
}

}  // namespace

Isometry::Isometry(LorentzMatrix m, std::optional<Similarity> s)
    : lorentz_(std::move(m)), similarity_(std::move(s)) {
  renormalize_if_needed();
}

void Isometry::renormalize_if_needed() {
  if (drift() > 1e-12) lorentz_gram_schmidt(lorentz_);
}

double Isometry::drift() const {
  const int n = static_cast<int>(lorentz_.rows());
  const LorentzMatrix j = minkowski_form(n);
  return (lorentz_.transpose() * j * lorentz_ - j).cwiseAbs().maxCoeff();
}

Isometry Isometry::identity(int dimension) {
  if (dimension < 2 || dimension > kMaxDimension) throw DomainError("dimension must lie in [2, 4]");
  Similarity s;
  s.q = Orthogonal::Identity(dimension - 1, dimension - 1);
  return Isometry(LorentzMatrix::Identity(dimension + 1, dimension + 1), s);
}

Isometry Isometry::scale_translate(double k, std::span<const double> x) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scale factor must be positive");
  const int d = static_cast<int>(x.size()) + 1;
  if (d < 2 || d > kMaxDimension) throw DomainError("dimension must lie in [2, 4]");
  Similarity s;
  s.k = k;
  s.q = Orthogonal::Identity(d - 1, d - 1);
  std::copy(x.begin(), x.end(), s.x.begin());
  return Isometry(translation_matrix(x) * scaling_matrix(d, k), s);
}

Isometry Isometry::rotation_about_origin(const Orthogonal& r) {
  const int d = static_cast<int>(r.rows());
  if (d < 2 || d > kMaxDimension || r.cols() != d) throw DomainError("rotation has wrong shape");
  if (!is_orthogonal(r)) throw DomainError("matrix is not orthogonal");
  std::optional<Similarity> s;
  // Rotations that fix the vertical direction act as Euclidean rotations of the boundary.
  bool fixes_vertical = std::abs(r(d - 1, d - 1) - 1.0) <= 1e-15;
  for (int i = 0; i + 1 < d && fixes_vertical; ++i)
    fixes_vertical = r(i, d - 1) == 0.0 && r(d - 1, i) == 0.0;
  if (fixes_vertical) {
    s.emplace();
    s->q = r.topLeftCorner(d - 1, d - 1);
  }
  return Isometry(rotation_matrix(r), s);
}

Isometry Isometry::phi(double h, const Orthogonal& r) {
  if (!(h > 0.0) || h > 1.0) throw DomainError("h must lie in (0, 1]");
  const int d = static_cast<int>(r.rows());
  std::array<double, kMaxDimension - 1> zero{};
  return scale_translate(h, std::span<const double>(zero.data(), static_cast<std::size_t>(d - 1)))
      .compose(rotation_about_origin(r));
}

Isometry Isometry::from_lorentz(const LorentzMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (n < 3 || n > kMaxDimension + 1 || m.cols() != n) throw DomainError("Lorentz matrix has wrong shape");
  Isometry iso(m, std::nullopt);
  if (iso.drift() > 1e-6) throw DomainError("matrix does not preserve the Minkowski form");
  if (iso.lorentz_(0, 0) <= 0.0) throw DomainError("matrix swaps the hyperboloid sheets");
  return iso;
}

Point Isometry::apply(const Point& p) const {
  if (p.dimension() != dimension()) throw DomainError("point dimension mismatch");
  if (similarity_) {
    const int n = dimension() - 1;
    std::array<double, kMaxDimension - 1> u{};
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += similarity_->q(i, j) * p.horizontal(j);
      u[static_cast<std::size_t>(i)] = similarity_->k * acc + similarity_->x[static_cast<std::size_t>(i)];
    }
    return Point(std::span<const double>(u.data(), static_cast<std::size_t>(n)), similarity_->k * p.height());
  }
  return from_hyperboloid(lorentz_ * to_hyperboloid(p));
}

Isometry Isometry::compose(const Isometry& other) const {
  if (other.dimension() != dimension()) throw DomainError("isometry dimension mismatch");
  std::optional<Similarity> s;
  if (similarity_ && other.similarity_) {
    const int n = dimension() - 1;
    s.emplace();
    s->k = similarity_->k * other.similarity_->k;
    s->q = similarity_->q * other.similarity_->q;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += similarity_->q(i, j) * other.similarity_->x[static_cast<std::size_t>(j)];
      s->x[static_cast<std::size_t>(i)] = similarity_->k * acc + similarity_->x[static_cast<std::size_t>(i)];
    }
  }
  return Isometry(lorentz_ * other.lorentz_, s);
}

Isometry Isometry::inverse() const {
  const int n = static_cast<int>(lorentz_.rows());
  const LorentzMatrix j = minkowski_form(n);
  std::optional<Similarity> s;
  if (similarity_) {
    const int m = n - 2;
    s.emplace();
    s->k = 1.0 / similarity_->k;
    s->q = similarity_->q.transpose();
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (int jj = 0; jj < m; ++jj) acc += s->q(i, jj) * similarity_->x[static_cast<std::size_t>(jj)];
      s->x[static_cast<std::size_t>(i)] = -s->k * acc;
    }
  }
  return Isometry(j * lorentz_.transpose() * j, s);
}

Orthogonal rotation2(double angle) {
  Orthogonal r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Orthogonal random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd rr = qr.matrixQR();
  // Sign fix makes the distribution Haar.
  for (int j = 0; j < n; ++j)
    if (rr(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

bool is_orthogonal(const Orthogonal& r, double tol) {
  if (r.rows() != r.cols()) return false;
  const Orthogonal id = Orthogonal::Identity(r.rows(), r.cols());
  return (r.transpose() * r - id).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace hypgrowth::geom
