#include "hypgrowth/gp_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/parallel.hpp"
#include "hypgrowth/percolation.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/slab_graph.hpp"

namespace hypgrowth::decay {

namespace {

constexpr double kHitTolerance = 1e-9;
constexpr std::size_t kTrialBlock = 256;

int threads_of(const GpOptions& o) { return o.threads > 0 ? o.threads : default_thread_count(); }

void check_grid(const std::vector<double>& p_values, const std::vector<double>& r_grid) {
  if (p_values.empty() || r_grid.empty()) throw DomainError("empty p or r grid");
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  for (std::size_t i = 0; i < r_grid.size(); ++i)
    if (r_grid[i] < 0.0 || (i > 0 && !(r_grid[i] > r_grid[i - 1])))
      throw DomainError("r grid must be non-negative and increasing");
}

struct Cell {
  graph::SlabGraph slab;
  graph::VertexId origin = 0;
};

Cell make_cell(const graph::GraphFamily& family, const Position& pos, double r_max, const GpOptions& options) {
  const auto phi = geom::Isometry::phi(pos.h, pos.rotation);
  const double lo = pos.h * options.delta_fraction;
  const auto g = family.generate(phi, graph::Region::band_box(r_max, lo, 1.0));
  Cell c;
  c.slab = graph::clip_to_band(g, lo, 1.0);
  const std::vector<double> center(static_cast<std::size_t>(family.dimension() - 1), 0.0);
  c.slab.require_covered(center, r_max);
  if (!c.slab.origin()) throw Error("placed origin missing from its slab");
  c.origin = *c.slab.origin();
  return c;
}

void summarise(GpCurve& curve) {
  const std::size_t np = curve.p_values.size(), nr = curve.r_grid.size();
  curve.estimate.assign(np, std::vector<double>(nr, 0.0));
  curve.ci.assign(np, std::vector<double>(nr, 0.0));
  curve.argmax.assign(np, std::vector<int>(nr, -1));
  curve.runner_up.assign(np, std::vector<double>(nr, 0.0));
  curve.runner_up_id.assign(np, std::vector<int>(nr, -1));
  for (std::size_t pi = 0; pi < np; ++pi)
    for (std::size_t ri = 0; ri < nr; ++ri) {
      double best = -1.0, second = -1.0;
      int best_id = -1, second_id = -1;
      std::size_t best_cell = 0;
      for (std::size_t c = 0; c < curve.counts.size(); ++c) {
        const double f = curve.frequency(c, pi, ri);
        if (f > best) {
          second = best;
          second_id = best_id;
          best = f;
          best_id = curve.positions[c].id;
          best_cell = c;
        } else if (f > second) {
          second = f;
          second_id = curve.positions[c].id;
        }
      }
      curve.estimate[pi][ri] = std::max(best, 0.0);
      curve.argmax[pi][ri] = best_id;
      curve.runner_up[pi][ri] = std::max(second, 0.0);
      curve.runner_up_id[pi][ri] = second_id;
      curve.ci[pi][ri] = binomial_ci(curve.counts[best_cell][pi][ri], curve.trials);
    }
}

}  // namespace

std::string Position::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << "h=" << h << " R=[";
  for (Eigen::Index i = 0; i < rotation.rows(); ++i)
    for (Eigen::Index j = 0; j < rotation.cols(); ++j) os << (i + j ? " " : "") << rotation(i, j);
  os << "]";
  return os.str();
}

std::vector<Position> sample_positions(int dimension, std::size_t count, std::uint64_t seed, double h_min) {
  if (!(h_min > 0.0 && h_min <= 1.0)) throw DomainError("h_min must lie in (0, 1]");
  std::mt19937_64 rng(derive_seed(seed, {tag_of("positions")}));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Position> out;
  for (std::size_t i = 0; i < count; ++i) {
    Position pos;
    pos.id = static_cast<int>(i);
    if (i == 0) {
      pos.rotation = geom::Orthogonal::Identity(dimension, dimension);
    } else {
      pos.h = std::exp(std::log(h_min) * unit(rng));
      pos.rotation = geom::random_orthogonal(dimension, rng);
    }
    out.push_back(std::move(pos));
  }
  return out;
}

double GpCurve::frequency(std::size_t cell, std::size_t pi, std::size_t ri) const {
  return trials == 0 ? 0.0 : static_cast<double>(counts[cell][pi][ri]) / static_cast<double>(trials);
}

std::size_t GpCurve::r_monotonicity_violations() const {
  std::size_t bad = 0;
  for (const auto& cell : counts)
    for (const auto& row : cell)
      for (std::size_t ri = 1; ri < row.size(); ++ri) bad += row[ri] > row[ri - 1];
  return bad;
}

double binomial_ci(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return 1.0;
  const double f = (static_cast<double>(hits) + 1.0) / (static_cast<double>(n) + 2.0);
  return 4.0 * std::sqrt(f * (1.0 - f) / static_cast<double>(n));
}

GpCurve estimate_gp(const graph::GraphFamily& family, const std::vector<double>& p_values,
                    const std::vector<double>& r_grid, const std::vector<Position>& positions,
                    const GpOptions& options) {
  check_grid(p_values, r_grid);
  if (positions.empty()) throw DomainError("no positions to sample");
  GpCurve curve;
  curve.p_values = p_values;
  curve.r_grid = r_grid;
  curve.trials = options.trials;
  curve.positions = positions;
  curve.family = family.name();
  const double r_max = r_grid.back();
  const std::size_t np = p_values.size(), nr = r_grid.size();
  std::vector<std::size_t> p_order(np);
  std::iota(p_order.begin(), p_order.end(), 0);
  std::sort(p_order.begin(), p_order.end(), [&](auto a, auto b) { return p_values[a] < p_values[b]; });

  for (const auto& pos : positions) {
    const Cell cell = make_cell(family, pos, r_max, options);
    curve.graph_vertices += cell.slab.vertex_count();
    const std::size_t blocks = (options.trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<std::vector<std::vector<std::uint64_t>>> partial(
        blocks, std::vector<std::vector<std::uint64_t>>(np, std::vector<std::uint64_t>(nr, 0)));
    std::vector<std::uint64_t> violations(blocks, 0);
    parallel_for(blocks, threads_of(options), [&](std::size_t b) {
      perc::ClusterExplorer explorer(cell.slab);
      const graph::VertexId seeds[] = {cell.origin};
      const std::size_t end = std::min(options.trials, (b + 1) * kTrialBlock);
      for (std::size_t t = b * kTrialBlock; t < end; ++t) {
        const std::uint64_t s = derive_seed(options.seed, {tag_of("gp"), static_cast<std::uint64_t>(pos.id), t});
        double previous = -1.0;
        for (std::size_t pi : p_order) {
          const double p = p_values[pi];
          const double reach = std::min(
              r_max, explorer.explore(seeds, [&](graph::ParentId e) { return edge_uniform(s, e) < p; }, r_max));
          if (reach < previous) ++violations[b];
          previous = reach;
          for (std::size_t ri = 0; ri < nr; ++ri)
            if (reach >= r_grid[ri] - kHitTolerance) ++partial[b][pi][ri];
        }
      }
    });
    std::vector<std::vector<std::uint64_t>> total(np, std::vector<std::uint64_t>(nr, 0));
    for (std::size_t b = 0; b < blocks; ++b) {
      curve.coupling_violations += violations[b];
      for (std::size_t pi = 0; pi < np; ++pi)
        for (std::size_t ri = 0; ri < nr; ++ri) total[pi][ri] += partial[b][pi][ri];
    }
    curve.counts.push_back(std::move(total));
  }
  summarise(curve);
  return curve;
}

ThickTail estimate_thick_origin_tail(const graph::GraphFamily& family, double p, double r0,
                                     const std::vector<double>& r_grid, const std::vector<Position>& positions,
                                     const GpOptions& options) {
  check_grid({p}, r_grid);
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
  if (positions.empty()) throw DomainError("no positions to sample");
  ThickTail out;
  GpCurve& curve = out.curve;
  curve.p_values = {p};
  curve.r_grid = r_grid;
  curve.trials = options.trials;
  curve.positions = positions;
  curve.family = family.name();
  const double r_max = std::max(r_grid.back(), r0);
  const std::size_t nr = r_grid.size();

  for (const auto& pos : positions) {
    const Cell cell = make_cell(family, pos, r_max, options);
    curve.graph_vertices += cell.slab.vertex_count();
    const auto thick = perc::thick_origin(cell.slab, r0);
    std::vector<std::vector<std::uint64_t>> total(1, std::vector<std::uint64_t>(nr, 0));
    if (thick.empty()) {
      ++out.empty_thick_origins;
      curve.counts.push_back(std::move(total));
      continue;
    }
    const std::size_t blocks = (options.trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(nr, 0));
    std::vector<std::uint64_t> checks(blocks, 0), bad(blocks, 0);
    parallel_for(blocks, threads_of(options), [&](std::size_t b) {
      perc::ClusterExplorer explorer(cell.slab);
      const std::size_t end = std::min(options.trials, (b + 1) * kTrialBlock);
      for (std::size_t t = b * kTrialBlock; t < end; ++t) {
        const std::uint64_t s = derive_seed(options.seed, {tag_of("thick"), static_cast<std::uint64_t>(pos.id), t});
        auto open = [&](graph::ParentId e) { return edge_uniform(s, e) < p; };
        const double reach = explorer.explore(thick, open);
        for (std::size_t ri = 0; ri < nr; ++ri)
          if (reach >= r_grid[ri] - kHitTolerance) ++partial[b][ri];
        if (reach < r0 + kHitTolerance) continue;
        // Some thick-origin vertex must reach d_eth >= reach - r0 from itself.
        double own = 0.0;
        for (graph::VertexId v : thick) {
          const graph::VertexId seed[] = {v};
          explorer.explore(seed, open);
          for (graph::VertexId w : explorer.visited())
            own = std::max(own, geom::d_eth(cell.slab.position(v), cell.slab.position(w)));
        }
        for (double r : r_grid)
          if (r > r0 && reach >= r - kHitTolerance) {
            ++checks[b];
            if (own < r - r0 - kHitTolerance) ++bad[b];
          }
      }
    });
    for (std::size_t b = 0; b < blocks; ++b) {
      out.domination_checks += checks[b];
      out.domination_violations += bad[b];
      for (std::size_t ri = 0; ri < nr; ++ri) total[0][ri] += partial[b][ri];
    }
    curve.counts.push_back(std::move(total));
  }
  summarise(curve);
  return out;
}

}  // namespace hypgrowth::decay
