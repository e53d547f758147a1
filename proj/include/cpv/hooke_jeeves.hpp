#pragma once

// Hooke-Jeeves pattern search on a box. Exploratory moves perturb one
// coordinate at a time by +/- its step; a successful sweep is followed by a
// pattern move along the improvement direction. Failed sweeps halve the
// steps. Every probe is clipped to the box.

#include <functional>
#include <span>
#include <vector>

#include "cpv/evaluate.hpp"
#include "cpv/pareto.hpp"

namespace cpv {

struct HookeJeevesOptions {
  double initial_step = 0.1;  // fraction of each variable's range
  double tolerance = 1e-4;    // stop once every step is below this fraction
  double shrink = 0.5;
  int max_iterations = 200;   // exploratory sweeps around a base point
};

void validate(const HookeJeevesOptions& o);

struct HookeJeevesResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> steps;  // final absolute step per variable
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  // stopped on tolerance rather than on the cap
};

HookeJeevesResult hooke_jeeves(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> start, std::span<const double> lower,
                               std::span<const double> upper, const HookeJeevesOptions& options = {});

// Pattern search on the scalarized vessel objective, keeping the full
// evaluation history like the genetic run.
OptimizationResult run_hooke_jeeves(std::span<const double> start, std::span<const double> lower,
                                    std::span<const double> upper, const Evaluator& evaluate,
                                    const Scalarization& objective,
                                    const HookeJeevesOptions& options = {},
                                    HookeJeevesResult* summary = nullptr);

}  // namespace cpv
