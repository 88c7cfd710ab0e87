#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypgrowth/family.hpp"
#include "hypgrowth/isometry.hpp"

namespace hypgrowth::decay {

// One sampled position (h, R) for the placed origin o^(h,R) = Phi^(h,R)(o).
struct Position {
  int id = 0;
  double h = 1.0;
  geom::Orthogonal rotation;
  std::string describe() const;
};

// Position 0 is (1, I); the rest have h log-uniform on [h_min, 1] and Haar-random R.
std::vector<Position> sample_positions(int dimension, std::size_t count, std::uint64_t seed,
                                       double h_min = 1.0 / 64.0);

struct GpOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
  double delta_fraction = 1.0 / 16.0;  // lower cut of each cell at h * delta_fraction
};

// Frequencies per position cell and their pointwise maximum.
struct GpCurve {
  std::vector<double> p_values;
  std::vector<double> r_grid;
  std::size_t trials = 0;
  std::vector<Position> positions;
  std::string family;
  // [cell][p][r] hit counts
  std::vector<std::vector<std::vector<std::uint64_t>>> counts;
  // [p][r]
  std::vector<std::vector<double>> estimate;
  std::vector<std::vector<double>> ci;  // 4 sigma half-width of the argmax cell
  std::vector<std::vector<int>> argmax;
  std::vector<std::vector<double>> runner_up;
  std::vector<std::vector<int>> runner_up_id;
  // Per-sample violations of monotonicity in p (must stay 0 under the coupling).
  std::uint64_t coupling_violations = 0;
  std::size_t graph_vertices = 0;  // summed over cells

  double frequency(std::size_t cell, std::size_t pi, std::size_t ri) const;
  // Counts non-increasing in r inside every cell, for every p.
  std::size_t r_monotonicity_violations() const;
};

// 4 sigma binomial half-width with the (k+1)/(n+2) plug-in so that empty cells get a width.
double binomial_ci(std::uint64_t hits, std::uint64_t n);

// Monte Carlo of Pr(o^(h,R) <-> S_r in Phi^(h,R)[G] cut to [h delta_fraction, 1]) for each
// position, r and p; trials share uniforms across p.
GpCurve estimate_gp(const graph::GraphFamily& family, const std::vector<double>& p_values,
                    const std::vector<double>& r_grid, const std::vector<Position>& positions,
                    const GpOptions& options);

struct ThickTail {
  GpCurve curve;                    // frequencies of r(union of clusters meeting o_Phi) >= r
  std::uint64_t domination_checks = 0;
  std::uint64_t domination_violations = 0;  // thick hit at r without some v reaching r - r0 from itself
  std::size_t empty_thick_origins = 0;
};

ThickTail estimate_thick_origin_tail(const graph::GraphFamily& family, double p, double r0,
                                     const std::vector<double>& r_grid, const std::vector<Position>& positions,
                                     const GpOptions& options);

}  // namespace hypgrowth::decay
