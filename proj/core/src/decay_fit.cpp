#include "hypgrowth/decay_fit.hpp"

#include <cmath>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::decay {

DecayFit fit_decay(const std::vector<double>& r, const std::vector<double>& y, double noise_floor) {
  if (r.size() != y.size()) throw DomainError("r and estimate lengths differ");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (y[i] > noise_floor && y[i] > 0.0) {
      xs.push_back(r[i]);
      ys.push_back(std::log(y[i]));
    }
  if (xs.size() < 4)
    throw DomainError("only " + std::to_string(xs.size()) + " cells lie above the noise floor; 4 are needed");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw DomainError("fit needs at least two distinct r values");
  DecayFit fit;
  const double slope = sxy / sxx;
  fit.psi = -slope;
  fit.intercept = my - slope * mx;
  fit.cells_used = xs.size();
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy <= 1e-300 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

DecayFit fit_decay(const GpCurve& curve, std::size_t p_index) {
  if (p_index >= curve.estimate.size()) throw DomainError("p index out of range");
  const double floor = curve.trials > 0 ? 10.0 / static_cast<double>(curve.trials) : 0.0;
  return fit_decay(curve.r_grid, curve.estimate[p_index], floor);
}

}  // namespace hypgrowth::decay
