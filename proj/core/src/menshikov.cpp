#include "hypgrowth/menshikov.hpp"

#include <cmath>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::decay {

double RecursionTrace::total_decrease() const { return p1 - p_next; }

RecursionTrace menshikov_recursion(double p1, double r1, const GEvaluator& g, std::optional<double> p_floor,
                                   std::size_t max_steps) {
  if (!(r1 > 0.0)) throw DomainError("r1 must be positive");
  RecursionTrace trace;
  trace.p1 = p1;
  trace.r1 = r1;
  trace.p_floor = p_floor;
  double p = p1, r = r1;
  for (std::size_t i = 1; i <= max_steps; ++i) {
    const double gi = g(p, r);
    if (!(gi > 0.0 && gi < 1.0)) throw DomainError("g must take values in (0, 1), got " + std::to_string(gi));
    if (!trace.steps.empty()) trace.steps.back().squared = gi <= trace.steps.back().g * trace.steps.back().g * (1 + 1e-12);
    trace.steps.push_back({static_cast<int>(i), p, r, gi, true});
    const double p_next = p - 3.0 * gi * (1.0 - std::log(gi));
    r = r / gi;
    trace.p_next = p_next;
    if (p_floor && p_next <= *p_floor) {
      trace.status = RecursionTrace::Status::aborted;
      trace.reason = "p would fall to the floor";
      return trace;
    }
    p = p_next;
    if (gi < 1e-12) {
      trace.reason = "g below 1e-12";
      return trace;
    }
  }
  trace.reason = "step limit";
  return trace;
}

GEvaluator squaring_toy_model(double x1, double r1) {
  if (!(x1 > 0.0 && x1 < 1.0)) throw DomainError("x1 must lie in (0, 1)");
  return [x1, r1](double, double r) { return x1 * r1 / r; };
}

double s_of_x1(double x1) {
  if (!(x1 > 0.0 && x1 < 1.0)) throw DomainError("x1 must lie in (0, 1)");
  double s = 0.0;
  for (double x = x1;; x *= x) {
    const double term = 3.0 * x * (1.0 - std::log(x));
    s += term;
    if (term < 1e-15) break;
  }
  return s;
}

}  // namespace hypgrowth::decay
