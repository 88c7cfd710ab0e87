#pragma once

#include <vector>

#include "hypgrowth/gp_estimate.hpp"

namespace hypgrowth::decay {

struct DecayFit {
  double psi = 0.0;        // minus the slope of ln(estimate) against r
  double intercept = 0.0;  // ln(alpha)
  double r_squared = 0.0;
  std::size_t cells_used = 0;
};

// Least squares of ln y on r over the cells with y above `noise_floor`; needs at least 4 cells.
DecayFit fit_decay(const std::vector<double>& r, const std::vector<double>& y, double noise_floor = 0.0);

// Fit of one p row of a curve with the default floor 10 / trials.
DecayFit fit_decay(const GpCurve& curve, std::size_t p_index = 0);

}  // namespace hypgrowth::decay
