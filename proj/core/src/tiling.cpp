#include "hypgrowth/tiling.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::graph {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDedupTolerance = 1e-7;
constexpr double kCellSize = 0.5;

struct CellKey {
  std::array<std::int64_t, geom::kMaxDimension> c{};
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : k.c) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

// Cells of roughly constant hyperbolic size: log-height bands, horizontal cells scaled by height.
class SpatialHash {
 public:
  explicit SpatialHash(int dimension) : dim_(dimension) {}

  CellKey key(const geom::Point& p) const {
    CellKey k;
    k.c[0] = static_cast<std::int64_t>(std::floor(std::log(p.height()) / kCellSize));
    for (int i = 0; i + 1 < dim_; ++i)
      k.c[static_cast<std::size_t>(i + 1)] =
          static_cast<std::int64_t>(std::floor(p.horizontal(i) / (p.height() * kCellSize)));
    return k;
  }

  void insert(const geom::Point& p, VertexId id) { cells_[key(p)].push_back(id); }

  // Nearest stored vertex within `radius` (hyperbolic), if any.
  template <class PosFn>
  std::optional<std::pair<VertexId, double>> nearest(const geom::Point& p, PosFn pos) const {
    const CellKey base = key(p);
    std::optional<std::pair<VertexId, double>> best;
    const int axes = dim_;
    int combos = 1;
    for (int i = 0; i < axes; ++i) combos *= 3;
    for (int m = 0; m < combos; ++m) {
      CellKey k = base;
      int code = m;
      for (int i = 0; i < axes; ++i) {
        k.c[static_cast<std::size_t>(i)] += code % 3 - 1;
        code /= 3;
      }
      const auto it = cells_.find(k);
      if (it == cells_.end()) continue;
      for (VertexId id : it->second) {
        const double dist = geom::hyperbolic_distance(p, pos(id));
        if (!best || dist < best->second) best = {id, dist};
      }
    }
    return best;
  }

 private:
  int dim_;
  std::unordered_map<CellKey, std::vector<VertexId>, CellKeyHash> cells_;
};

geom::LorentzMatrix boost_x(double s) {
  geom::LorentzMatrix m = geom::LorentzMatrix::Identity(3, 3);
  m(0, 0) = std::cosh(s);
  m(0, 1) = std::sinh(s);
  m(1, 0) = std::sinh(s);
  m(1, 1) = std::cosh(s);
  return m;
}

// Orientation-preserving isometry of the upper half-plane, z -> (a z + b) / (c z + d) with ad - bc = 1.
// Products of these keep an intrinsic error near eps e^dist, against eps e^(2 dist) for 3x3 Lorentz
// matrices, which matters once the BFS runs several edge lengths out.
struct Mobius {
  double a = 1, b = 0, c = 0, d = 1;

  Mobius operator*(const Mobius& o) const {
    Mobius m{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    const double s = std::sqrt(m.a * m.d - m.b * m.c);
    m.a /= s, m.b /= s, m.c /= s, m.d /= s;
    return m;
  }
  std::complex<double> operator()(std::complex<double> z) const { return (a * z + b) / (c * z + d); }

  // z -> y z + x
  static Mobius affine(double x, double y) {
    const double r = std::sqrt(y);
    return {r, x / r, 0.0, 1.0 / r};
  }
  // Rotation about i with derivative e^{i psi} there.
  static Mobius rotation(double psi) {
    return {std::cos(psi / 2), std::sin(psi / 2), -std::sin(psi / 2), std::cos(psi / 2)};
  }
  // Derivative at i is y e^{i psi}; returns (x + i y, psi).
  std::pair<std::complex<double>, double> image_of_i() const {
    const std::complex<double> i(0.0, 1.0);
    return {(*this)(i), -2.0 * std::arg(c * i + d)};
  }
  geom::Isometry to_isometry() const {
    const auto [z, psi] = image_of_i();
    const double x[] = {z.real()};
    return geom::Isometry::scale_translate(z.imag(), x).compose(
        geom::Isometry::rotation_about_origin(geom::rotation2(psi)));
  }
  // z -> -conj(z) M -conj(z)
  Mobius mirrored() const { return {a, -b, -c, d}; }
};

// Placement = M (possibly after the mirror z -> -conj(z)).
std::pair<Mobius, bool> to_mobius(const geom::Isometry& placement) {
  const geom::LorentzVector x = placement.lorentz() * geom::to_hyperboloid(geom::Point::origin(2));
  geom::LorentzVector eu = geom::LorentzVector::Zero(3), et = geom::LorentzVector::Zero(3);
  eu(1) = 1.0;
  et(2) = -1.0;
  // Push the tangent basis at o forward and read it in half-plane coordinates.
  const double t = 1.0 / (x(0) + x(2));
  auto push = [&](const geom::LorentzVector& v) {
    const geom::LorentzVector w = placement.lorentz() * v;
    const double dt = -t * t * (w(0) + w(2));
    return std::complex<double>(t * w(1) + x(1) * dt, dt);
  };
  const auto du_img = push(eu), dt_img = push(et);
  const bool mirrored = (std::conj(du_img) * dt_img).imag() < 0.0;
  const double psi = std::arg(du_img) + (mirrored ? kPi : 0.0);
  return {Mobius::affine(x(1) * t, t) * Mobius::rotation(psi), mirrored};
}

}  // namespace

double tiling_edge_length(int p, int q) {
  if (p < 3 || q < 3 || (p - 2) * (q - 2) <= 4)
    throw DomainError("{" + std::to_string(p) + "," + std::to_string(q) + "} is not hyperbolic");
  return 2.0 * std::acosh(std::cos(kPi / p) / std::sin(kPi / q));
}

double tiling_face_circumradius(int p, int q) {
  if (p < 3 || q < 3 || (p - 2) * (q - 2) <= 4)
    throw DomainError("{" + std::to_string(p) + "," + std::to_string(q) + "} is not hyperbolic");
  return std::acosh(1.0 / (std::tan(kPi / p) * std::tan(kPi / q)));
}

Region Region::ball(double radius) {
  if (!(radius > 0.0)) throw DomainError("generation radius must be positive");
  Region r;
  r.kind = Kind::ball;
  r.radius = radius;
  return r;
}

Region Region::band_box(double half_width, double lo, double hi) {
  if (!(half_width > 0.0) || !(lo > 0.0) || !(hi >= lo)) throw DomainError("invalid band-box region");
  Region r;
  r.kind = Kind::band_box;
  r.radius = half_width;
  r.lo = lo;
  r.hi = hi;
  return r;
}

TilingResult generate_tiling(int p, int q, const geom::Isometry& placement, const Region& region,
                             std::size_t vertex_cap) {
  const double ell = tiling_edge_length(p, q);
  if (placement.dimension() != 2) throw DomainError("tilings live in H^2");
  // Exploring within one tile diameter of the region reaches every tile meeting it.
  const double margin = 2.0 * tiling_face_circumradius(p, q) + 1e-6;

  // rho: rotation about o by 2 pi / q; sigma: half-turn about the midpoint of the edge o-v1.
  const geom::LorentzVector o = geom::to_hyperboloid(geom::Point::origin(2));
  const geom::Point mid = geom::from_hyperboloid(boost_x(ell / 2.0) * o);
  const Mobius to_mid = Mobius::affine(mid.horizontal(0), mid.height());
  const Mobius from_mid = Mobius::affine(-mid.horizontal(0) / mid.height(), 1.0 / mid.height());
  const Mobius sigma = to_mid * Mobius::rotation(kPi) * from_mid;
  const auto [place, mirror] = to_mobius(placement);
  std::vector<Mobius> steps;
  std::vector<std::complex<double>> step_points;
  for (int k = 0; k < q; ++k) {
    const Mobius s = Mobius::rotation(2.0 * kPi * k / q) * sigma;
    steps.push_back(mirror ? s.mirrored() : s);
    step_points.push_back(steps.back()(std::complex<double>(0.0, 1.0)));
  }

  const geom::Point center = placement.apply(geom::Point::origin(2));
  auto explore = [&](const geom::Point& x) {
    if (region.kind == Region::Kind::ball) return geom::hyperbolic_distance(center, x) <= region.radius + margin;
    // The hyperbolic m-ball about (u, t) is the Euclidean ball of centre (u, t cosh m), radius t sinh m.
    const double t = x.height();
    if (t < region.lo * std::exp(-margin) || t > region.hi * std::exp(margin)) return false;
    return geom::d_eth_to_axis(x) <= region.radius + region.hi * std::sinh(margin);
  };

  std::vector<geom::Point> points{center};
  std::vector<Mobius> frames{place};
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> edge_keys;
  SpatialHash hash(2);
  hash.insert(center, 0);
  std::deque<VertexId> queue{0};
  auto pos = [&](VertexId id) -> const geom::Point& { return points[id]; };

  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (int k = 0; k < q; ++k) {
      const std::complex<double> z = frames[v](step_points[static_cast<std::size_t>(k)]);
      const double u[] = {z.real()};
      const geom::Point w(u, z.imag());
      VertexId wid;
      const auto near = hash.nearest(w, pos);
      if (near && near->second <= kDedupTolerance) {
        wid = near->first;
      } else {
        if (near && near->second < 1e-3 * ell)
          throw Error("tiling generation lost precision: near-coincident vertices at distance " +
                      std::to_string(near->second));
        if (!explore(w)) continue;
        if (points.size() >= vertex_cap)
          throw DomainError("tiling generation exceeds the vertex cap of " + std::to_string(vertex_cap));
        wid = static_cast<VertexId>(points.size());
        points.push_back(w);
        frames.push_back(frames[v] * steps[static_cast<std::size_t>(k)]);
        hash.insert(w, wid);
        queue.push_back(wid);
      }
      const std::uint64_t key = (std::uint64_t{std::min(v, wid)} << 32) | std::max(v, wid);
      if (edge_keys.insert(key).second) edges.push_back({std::min(v, wid), std::max(v, wid)});
    }
  }
  const geom::Isometry unmirror =
      geom::Isometry::rotation_about_origin(mirror ? geom::Orthogonal(Eigen::Vector2d(-1.0, 1.0).asDiagonal())
                                                   : geom::rotation2(0.0));
  auto frame = [&](VertexId v) { return frames[v].to_isometry().compose(unmirror); };

  GraphMeta meta;
  meta.family = "tiling";
  meta.params = {{"p", std::to_string(p)}, {"q", std::to_string(q)}};
  meta.shape = EdgeShape::geodesic;
  meta.max_edge_length = ell;

  if (region.kind == Region::Kind::band_box) {
    meta.generation_radius = 0.0;
    meta.coverage = Coverage::band_box(geom::Point::origin(2), region.radius, region.lo, region.hi);
    std::vector<geom::Isometry> out_frames;
    for (VertexId v = 0; v < points.size(); ++v) out_frames.push_back(frame(v));
    return {EmbeddedGraph(2, std::move(points), std::move(edges), 0, std::move(meta)), std::move(out_frames)};
  }

  // Ball: keep only vertices within the radius; BFS order already places the origin first.
  std::vector<VertexId> index(points.size(), 0);
  std::vector<geom::Point> kept;
  std::vector<geom::Isometry> kept_frames;
  std::vector<bool> keep(points.size(), false);
  for (VertexId v = 0; v < points.size(); ++v) {
    if (geom::hyperbolic_distance(center, points[v]) <= region.radius) {
      keep[v] = true;
      index[v] = static_cast<VertexId>(kept.size());
      kept.push_back(points[v]);
      kept_frames.push_back(frame(v));
    }
  }
  std::vector<Edge> kept_edges;
  for (const auto& e : edges)
    if (keep[e.u] && keep[e.v]) kept_edges.push_back({index[e.u], index[e.v]});
  meta.generation_radius = region.radius;
  meta.coverage = Coverage::ball(center, region.radius);
  return {EmbeddedGraph(2, std::move(kept), std::move(kept_edges), 0, std::move(meta)), std::move(kept_frames)};
}

EmbeddedGraph gen_tiling_h2(int p, int q, double radius, std::size_t vertex_cap) {
  return generate_tiling(p, q, geom::Isometry::identity(2), Region::ball(radius), vertex_cap).graph;
}

EmbeddedGraph gen_slab_lattice(int d, double spacing, double extent) {
  if (d < 2 || d > geom::kMaxDimension) throw DomainError("lattice dimension must lie in [2, 4]");
  if (!(spacing > 0.0)) throw DomainError("lattice spacing must be positive");
  if (extent < spacing) throw DomainError("lattice extent smaller than its spacing");
  const int n = static_cast<int>(std::floor(extent / spacing + 1e-9));
  const int side = 2 * n + 1;
  const int axes = d - 1;
  std::size_t count = 1;
  for (int a = 0; a < axes; ++a) count *= static_cast<std::size_t>(side);

  std::vector<geom::Point> vs;
  vs.reserve(count);
  std::vector<Edge> es;
  VertexId origin = 0;
  std::array<double, geom::kMaxDimension - 1> u{};
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    bool is_origin = true;
    for (int a = 0; a < axes; ++a) {
      const int z = static_cast<int>(rest % static_cast<std::size_t>(side)) - n;
      rest /= static_cast<std::size_t>(side);
      u[static_cast<std::size_t>(a)] = spacing * z;
      is_origin = is_origin && z == 0;
    }
    if (is_origin) origin = static_cast<VertexId>(idx);
    vs.emplace_back(std::span<const double>(u.data(), static_cast<std::size_t>(axes)), 1.0);
    std::size_t stride = 1;
    rest = idx;
    for (int a = 0; a < axes; ++a) {
      const int z = static_cast<int>(rest % static_cast<std::size_t>(side));
      rest /= static_cast<std::size_t>(side);
      if (z + 1 < side) es.push_back({static_cast<VertexId>(idx), static_cast<VertexId>(idx + stride)});
      stride *= static_cast<std::size_t>(side);
    }
  }
  GraphMeta meta;
  meta.family = "slab-lattice";
  meta.params = {{"d", std::to_string(d)}, {"spacing", std::to_string(spacing)}, {"extent", std::to_string(extent)}};
  meta.shape = EdgeShape::straight;
  meta.max_edge_length = spacing;
  meta.generation_radius = extent;
  meta.coverage = Coverage::band_box(geom::Point::origin(d), n * spacing, 1e-300, 1e300);
  return EmbeddedGraph(d, std::move(vs), std::move(es), origin, std::move(meta));
}

}  // namespace hypgrowth::graph
