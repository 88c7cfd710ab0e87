#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hypgrowth::decay {

struct RecursionStep {
  int i = 1;
  double p = 0.0;
  double r = 0.0;
  double g = 0.0;
  bool squared = true;  // g_{i+1} <= g_i^2 (checked against the next step)
};

struct RecursionTrace {
  enum class Status { completed, aborted };
  double p1 = 0.0, r1 = 0.0;
  std::optional<double> p_floor;
  std::vector<RecursionStep> steps;
  Status status = Status::completed;
  std::string reason;
  double total_decrease() const;  // p1 - (next p after the last step)
  double p_next = 0.0;            // p_{N+1}
};

// g_i = g(p_i, r_i); the iteration is r_{i+1} = r_i / g_i, p_{i+1} = p_i - 3 g_i (1 - ln g_i).
using GEvaluator = std::function<double(double p, double r)>;

// Runs until g_i < 1e-12 (completed) or p_{i+1} <= p_floor (aborted).
RecursionTrace menshikov_recursion(double p1, double r1, const GEvaluator& g, std::optional<double> p_floor,
                                   std::size_t max_steps = 64);

// g(p, r) = x1 r1 / r, which along the recursion gives g_i = x1^(2^(i-1)).
GEvaluator squaring_toy_model(double x1, double r1);

// sum_i 3 x_i (1 - ln x_i), x_{i+1} = x_i^2, until the term drops below 1e-15.
double s_of_x1(double x1);

}  // namespace hypgrowth::decay
