#include "cpv/hooke_jeeves.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpv {

void validate(const HookeJeevesOptions& o) {
  if (!(o.initial_step > 0.0 && o.initial_step <= 1.0)) {
    throw std::invalid_argument("initial_step must lie in (0, 1]");
  }
  if (!(o.tolerance > 0.0 && o.tolerance < o.initial_step)) {
    throw std::invalid_argument("tolerance must lie in (0, initial_step)");
  }
  if (!(o.shrink > 0.0 && o.shrink < 1.0)) throw std::invalid_argument("shrink must lie in (0, 1)");
  if (o.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
}

HookeJeevesResult hooke_jeeves(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> start, std::span<const double> lower,
                               std::span<const double> upper, const HookeJeevesOptions& options) {
  validate(options);
  const std::size_t n = start.size();
  if (lower.size() != n || upper.size() != n) throw std::invalid_argument("bounds differ in length from the start point");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(upper[i] > lower[i])) throw std::invalid_argument("upper bound must exceed lower bound");
  }

  HookeJeevesResult res;
  auto clip = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };
  auto value = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<double> steps(n), tol(n);
  for (std::size_t i = 0; i < n; ++i) {
    steps[i] = options.initial_step * (upper[i] - lower[i]);
    tol[i] = options.tolerance * (upper[i] - lower[i]);
  }

  // One sweep of coordinate probes around x; returns the improved point.
  auto explore = [&](std::vector<double> x, double& fx) {
    for (std::size_t i = 0; i < n; ++i) {
      for (double dir : {+1.0, -1.0}) {
        auto y = x;
        y[i] += dir * steps[i];
        clip(y);
        if (y[i] == x[i]) continue;
        const double fy = value(y);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          break;
        }
      }
    }
    return x;
  };

  std::vector<double> base(start.begin(), start.end());
  clip(base);
  double f_base = value(base);

  while (res.iterations < options.max_iterations) {
    ++res.iterations;
    double f_new = f_base;
    auto x_new = explore(base, f_new);
    if (f_new < f_base) {
      // Pattern moves while they keep paying off.
      while (res.iterations < options.max_iterations) {
        std::vector<double> pattern(n);
        for (std::size_t i = 0; i < n; ++i) pattern[i] = 2.0 * x_new[i] - base[i];
        clip(pattern);
        base = x_new;
        f_base = f_new;
        double f_pat = value(pattern);
        ++res.iterations;
        auto x_pat = explore(pattern, f_pat);
        if (!(f_pat < f_base)) break;
        x_new = std::move(x_pat);
        f_new = f_pat;
      }
      if (f_new < f_base) {
        base = x_new;
        f_base = f_new;
      }
      continue;
    }
    bool small = true;
    for (std::size_t i = 0; i < n; ++i) {
      steps[i] *= options.shrink;
      small = small && steps[i] < tol[i];
    }
    if (small) {
      res.converged = true;
      break;
    }
  }
  res.x = base;
  res.value = f_base;
  res.steps = steps;
  return res;
}

OptimizationResult run_hooke_jeeves(std::span<const double> start, std::span<const double> lower,
                                    std::span<const double> upper, const Evaluator& evaluate,
                                    const Scalarization& objective, const HookeJeevesOptions& options,
                                    HookeJeevesResult* summary) {
  validate(objective);
  OptimizationResult result;
  auto f = [&](std::span<const double> x) {
    EvaluationRecord r = evaluate(x);
    r.variables.assign(x.begin(), x.end());
    r.iteration = result.history.size() + 1;
    r.fitness = scalarize(r, objective);
    const double v = r.fitness;
    result.add(std::move(r));
    return v;
  };
  auto s = hooke_jeeves(f, start, lower, upper, options);
  if (summary) *summary = std::move(s);
  return result;
}

}  // namespace cpv
