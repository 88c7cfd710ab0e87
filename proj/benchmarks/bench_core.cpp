#include <benchmark/benchmark.h>

#include "hypgrowth/family.hpp"
#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/oracle.hpp"
#include "hypgrowth/percolation.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/slab_graph.hpp"
#include "hypgrowth/thresholds.hpp"
#include "hypgrowth/tiling.hpp"

using namespace hypgrowth;

static void BM_TilingBall(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  std::size_t vertices = 0;
  for (auto _ : state) {
    const auto g = graph::gen_tiling_h2(5, 4, radius);
    vertices = g.vertex_count();
    benchmark::DoNotOptimize(vertices);
  }
  state.counters["vertices"] = static_cast<double>(vertices);
}
BENCHMARK(BM_TilingBall)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ClipToSlab(benchmark::State& state) {
  const auto g = graph::gen_tiling_h2(5, 4, 7.0);
  const auto phi = geom::Isometry::phi(0.05, geom::rotation2(0.4));
  for (auto _ : state) benchmark::DoNotOptimize(graph::clip_to_slab(g, phi, geom::Slab(1.0, 0.05 / 16)));
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_ClipToSlab)->Unit(benchmark::kMillisecond);

// One lazily sampled cluster exploration per iteration, the inner loop of every Monte Carlo estimate.
static void BM_ClusterExplore(benchmark::State& state) {
  const auto fam = graph::make_family("{5,4}");
  const auto g = fam->generate(geom::Isometry::phi(0.3, geom::rotation2(0.2)), graph::Region::band_box(4.0, 0.3 / 16, 1.0));
  const auto slab = graph::clip_to_band(g, 0.3 / 16, 1.0);
  const double p = static_cast<double>(state.range(0)) / 100.0;
  perc::ClusterExplorer explorer(slab);
  const graph::VertexId o = *slab.origin();
  std::uint64_t t = 0;
  for (auto _ : state) {
    const auto seed = derive_seed(1, {t++});
    benchmark::DoNotOptimize(explorer.explore({&o, 1}, [&](graph::ParentId e) { return edge_uniform(seed, e) < p; }));
  }
}
BENCHMARK(BM_ClusterExplore)->Arg(10)->Arg(30)->Arg(50);

static void BM_ExactProb(benchmark::State& state) {
  const auto gadgets = oracle::slab_gadgets();
  const auto& g = gadgets.front();
  const auto event = g.events().front();
  for (auto _ : state) benchmark::DoNotOptimize(oracle::exact_prob(g.graph, event));
  state.counters["edges"] = static_cast<double>(g.graph.parent_count());
}
BENCHMARK(BM_ExactProb)->Unit(benchmark::kMillisecond);

static void BM_EstimateGp(benchmark::State& state) {
  const auto fam = graph::make_family("{5,4}");
  const auto positions = decay::sample_positions(2, 4, 1);
  decay::GpOptions opt;
  opt.trials = static_cast<std::size_t>(state.range(0));
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(decay::estimate_gp(*fam, {0.1}, {1.0, 2.0, 4.0}, positions, opt));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0) * 4);
}
BENCHMARK(BM_EstimateGp)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_CrossingCurve(benchmark::State& state) {
  const auto g = graph::whole_graph(graph::gen_slab_lattice(3, 1.0, static_cast<double>(state.range(0))));
  std::vector<double> p_grid;
  for (int i = 0; i <= 20; ++i) p_grid.push_back(0.4 + 0.01 * i);
  for (auto _ : state) benchmark::DoNotOptimize(decay::crossing_curve(g, p_grid, 100, 1, 1));
}
BENCHMARK(BM_CrossingCurve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
