#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mqc {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexSettings {
  double initial_step = 0.5;
  double diameter_tolerance = 1e-8;
  int max_evaluations = 20000;
};

struct SimplexResult {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;  // simplex diameter fell below tolerance
};

/// Nelder-Mead downhill simplex (standard coefficients 1, 2, 1/2, 1/2).
SimplexResult nelder_mead(const Objective& f, std::vector<double> start,
                          const SimplexSettings& settings = {});

struct ScalarExtremum {
  double x;
  double value;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi], stopping
/// when the bracket is below `relative_tolerance` times |x|.
ScalarExtremum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                       double hi, double relative_tolerance);

}  // namespace mqc
