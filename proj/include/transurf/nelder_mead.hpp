#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace transurf {

struct NelderMeadOptions {
  double initial_step = 0.5;
  std::size_t max_iterations = 5000;
  // Stop once the spread of simplex values drops below this.
  double f_tol = 1e-16;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Derivative-free downhill simplex minimization (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Non-finite objective values count as +inf.
/// Fully deterministic for a deterministic objective.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace transurf
