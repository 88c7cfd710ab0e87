#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypgrowth::decay {

// A step tail Pr(M >= r_j) = tail_j on an increasing grid, read as the law of M: M is the
// largest grid value whose tail exceeds a uniform draw (0 if none; +inf past the last point).
struct EmpiricalTail {
  std::vector<double> r;
  std::vector<double> tail;

  EmpiricalTail(std::vector<double> r_grid, std::vector<double> tail_values);
  double sample(double u) const;
  // E[min(M, cap)]
  double mean_capped(double cap) const;
};

struct WaldReport {
  std::uint64_t samples = 0;
  double a = 0.0, r = 0.0;
  double mean_m_prime = 0.0;  // exact a + E[min(M, r)]
  double mean_s_k = 0.0, mean_k = 0.0;
  double residual = 0.0;      // mean of S_K - K E[M']
  double residual_se = 0.0;
  double se_k = 0.0;
  bool wald_ok = false;       // |residual| <= 4 se
  bool bound_ok = false;      // E[K] >= (r + a) / E[M'] within 4 se
};

// M'_i = a + min(M_i, r), K = first k with S_k >= r + a.
WaldReport renewal_wald_check(const EmpiricalTail& tail, double a, double r, std::uint64_t samples,
                              std::uint64_t seed, int threads = 0);

struct FunctionalRow {
  double r = 0.0;
  double lhs = 0.0;    // estimate_alpha(r)
  double rhs = 0.0;    // estimate_beta(r) exp(-(beta - alpha)(r / (a + int_0^r est_beta) - 1))
  double slack = 0.0;  // sum of the two CI half-widths
  enum class Status { pass, warning, fail } status = Status::pass;
};

struct FunctionalReport {
  std::vector<FunctionalRow> rows;
  std::size_t warnings = 0, failures = 0;
};

// Checks f_alpha(r) <= f_beta(r) exp(-(beta-alpha)(r / (a + int_0^r f_beta) - 1)) on a shared grid.
// The integral is a trapezoid rule anchored at f_beta(0) = 1.
FunctionalReport functional_inequality_check(double alpha, double beta, const std::vector<double>& r_grid,
                                             const std::vector<double>& est_alpha, const std::vector<double>& ci_alpha,
                                             const std::vector<double>& est_beta, const std::vector<double>& ci_beta,
                                             double a);

}  // namespace hypgrowth::decay
