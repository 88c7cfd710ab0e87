#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/report.hpp"

namespace hypgrowth::oracle {

struct SuiteOptions {
  bool russo = true;
  bool monotone = true;
  std::size_t bk_pairs = 100;
  std::uint64_t seed = 1;
  std::vector<std::pair<double, double>> alpha_beta = {{0.1, 0.3}, {0.2, 0.4}, {0.3, 0.6}};
  bool saus = true;
  std::vector<mpq_class> saus_p_grid = {mpq_class(1, 10), mpq_class(3, 10), mpq_class(1, 2), mpq_class(7, 10),
                                        mpq_class(9, 10)};
  // Monte Carlo agreement of seed <-> terminal with the exact polynomial; 0 skips it.
  std::size_t mc_trials = 0;
  std::vector<double> mc_p = {0.2, 0.5, 0.8};
  int threads = 0;
};

// A random increasing event on a gadget: a connection, a sphere crossing, a cluster size or a
// threshold on the number of open edges in a random subset.
EventSpec random_increasing_event(const Gadget& g, std::mt19937_64& rng);

struct EventPair {
  std::size_t gadget = 0;
  EventSpec a, b;
};

// `count` pairs on the gadgets with at most `max_edges` parents, drawn deterministically from `seed`.
std::vector<EventPair> random_event_pairs(const std::vector<Gadget>& gadgets, std::size_t count, std::uint64_t seed,
                                          std::size_t max_edges = 10);

// Runs the exact checks over `gadgets` and reports one row per (check, instance).
std::vector<report::CheckRow> run_oracle_suite(const std::vector<Gadget>& gadgets, const SuiteOptions& options);

}  // namespace hypgrowth::oracle
