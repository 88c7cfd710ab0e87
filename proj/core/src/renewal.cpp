#include "hypgrowth/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/parallel.hpp"
#include "hypgrowth/rng.hpp"

namespace hypgrowth::decay {

EmpiricalTail::EmpiricalTail(std::vector<double> r_grid, std::vector<double> tail_values)
    : r(std::move(r_grid)), tail(std::move(tail_values)) {
  if (r.size() != tail.size() || r.empty()) throw DomainError("tail grid and values must match and be non-empty");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(tail[i] >= 0.0 && tail[i] <= 1.0)) throw DomainError("tail values must lie in [0, 1]");
    if (i > 0 && !(r[i] > r[i - 1])) throw DomainError("tail grid must increase");
    if (r[i] < 0.0) throw DomainError("tail grid must be non-negative");
  }
  // Enforce a non-increasing tail, as for a distribution.
  for (std::size_t i = 1; i < tail.size(); ++i) tail[i] = std::min(tail[i], tail[i - 1]);
}

double EmpiricalTail::sample(double u) const {
  // tail is non-increasing, so {j : u < tail_j} is a prefix.
  std::size_t k = 0;
  while (k < tail.size() && u < tail[k]) ++k;
  if (k == 0) return 0.0;
  if (k == tail.size()) return std::numeric_limits<double>::infinity();
  return r[k - 1];
}

double EmpiricalTail::mean_capped(double cap) const {
  // min(M, cap) = sum_j 1{M >= r_j} (min(r_j, cap) - min(r_{j-1}, cap)), plus the mass above the grid.
  double mean = 0.0, prev = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double step = std::min(r[j], cap) - std::min(prev, cap);
    mean += tail[j] * step;
    prev = r[j];
  }
  // M = +inf with probability tail.back()
  mean += tail.back() * std::max(0.0, cap - std::min(r.back(), cap));
  return mean;
}

WaldReport renewal_wald_check(const EmpiricalTail& tail, double a, double r, std::uint64_t samples,
                              std::uint64_t seed, int threads) {
  if (a < 0.0 || r < 0.0) throw DomainError("a and r must be non-negative");
  if (samples < 2) throw DomainError("need at least two samples");
  WaldReport rep;
  rep.samples = samples;
  rep.a = a;
  rep.r = r;
  rep.mean_m_prime = a + tail.mean_capped(r);
  if (!(rep.mean_m_prime > 0.0)) throw DomainError("degenerate tail: M' is identically 0");
  const double mu = rep.mean_m_prime;
  const double target = r + a;
  constexpr std::uint64_t kBlock = 1u << 14;
  const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  struct Sums {
    double s = 0, k = 0, k2 = 0, z = 0, z2 = 0;
  };
  std::vector<Sums> part(blocks);
  parallel_for(blocks, threads > 0 ? threads : default_thread_count(), [&](std::size_t b) {
    Sums acc;
    const std::uint64_t end = std::min<std::uint64_t>(samples, (b + 1) * kBlock);
    for (std::uint64_t n = b * kBlock; n < end; ++n) {
      const std::uint64_t stream = derive_seed(seed, {tag_of("renewal"), n});
      double s = 0.0;
      std::uint64_t k = 0;
      do {
        s += a + std::min(tail.sample(edge_uniform(stream, k)), r);
        ++k;
      } while (s < target);
      const double kd = static_cast<double>(k);
      const double z = s - kd * mu;
      acc.s += s;
      acc.k += kd;
      acc.k2 += kd * kd;
      acc.z += z;
      acc.z2 += z * z;
    }
    part[b] = acc;
  });
  Sums t;
  for (const auto& p : part) {
    t.s += p.s;
    t.k += p.k;
    t.k2 += p.k2;
    t.z += p.z;
    t.z2 += p.z2;
  }
  const double n = static_cast<double>(samples);
  rep.mean_s_k = t.s / n;
  rep.mean_k = t.k / n;
  rep.residual = t.z / n;
  const double var_z = std::max(0.0, (t.z2 - n * rep.residual * rep.residual) / (n - 1));
  const double var_k = std::max(0.0, (t.k2 - n * rep.mean_k * rep.mean_k) / (n - 1));
  rep.residual_se = std::sqrt(var_z / n);
  rep.se_k = std::sqrt(var_k / n);
  rep.wald_ok = std::abs(rep.residual) <= 4.0 * rep.residual_se + 1e-12 * std::max(1.0, rep.mean_s_k);
  rep.bound_ok = rep.mean_k >= target / mu - 4.0 * rep.se_k - 1e-12;
  return rep;
}

FunctionalReport functional_inequality_check(double alpha, double beta, const std::vector<double>& r_grid,
                                             const std::vector<double>& est_alpha, const std::vector<double>& ci_alpha,
                                             const std::vector<double>& est_beta, const std::vector<double>& ci_beta,
                                             double a) {
  const std::size_t n = r_grid.size();
  if (est_alpha.size() != n || est_beta.size() != n || ci_alpha.size() != n || ci_beta.size() != n)
    throw DomainError("curves are not on the same r grid");
  if (alpha > beta) throw DomainError("need alpha <= beta");
  FunctionalReport rep;
  double integral = 0.0, prev_r = 0.0, prev_f = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = r_grid[i];
    integral += 0.5 * (prev_f + est_beta[i]) * (r - prev_r);
    prev_r = r;
    prev_f = est_beta[i];
    FunctionalRow row;
    row.r = r;
    row.lhs = est_alpha[i];
    const double denom = a + integral;
    const double exponent = denom > 0.0 ? -(beta - alpha) * (r / denom - 1.0) : 0.0;
    row.rhs = est_beta[i] * std::exp(exponent);
    row.slack = ci_alpha[i] + ci_beta[i];
    if (row.lhs <= row.rhs) {
      row.status = FunctionalRow::Status::pass;
    } else if (row.lhs <= row.rhs + row.slack) {
      row.status = FunctionalRow::Status::warning;
      ++rep.warnings;
    } else {
      row.status = FunctionalRow::Status::fail;
      ++rep.failures;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace hypgrowth::decay
