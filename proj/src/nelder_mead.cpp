#include "transurf/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace transurf {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double safe(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  auto eval = [&](const std::vector<double>& x) { return safe(objective(x)); };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  std::vector<double> centroid(n), trial(n);
  auto along = [&](double coef) {
    // centroid + coef * (centroid - worst)
    const auto& worst = simplex.back().x;
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + coef * (centroid[k] - worst[k]);
    return Vertex{trial, eval(trial)};
  };

  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().f - simplex.front().f <= options.f_tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v].x[k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const Vertex reflected = along(1.0);
    if (reflected.f < simplex.front().f) {
      Vertex expanded = along(2.0);
      simplex.back() = expanded.f < reflected.f ? std::move(expanded) : reflected;
      continue;
    }
    if (reflected.f < simplex[n - 1].f) {
      simplex.back() = reflected;
      continue;
    }
    const bool outside = reflected.f < simplex.back().f;
    Vertex contracted = along(outside ? 0.5 : -0.5);
    if (contracted.f < (outside ? reflected.f : simplex.back().f)) {
      simplex.back() = std::move(contracted);
      continue;
    }
    const std::vector<double> best = simplex.front().x;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t k = 0; k < n; ++k) {
        simplex[v].x[k] = best[k] + 0.5 * (simplex[v].x[k] - best[k]);
      }
      simplex[v].f = eval(simplex[v].x);
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().x, simplex.front().f, it};
}

}  // namespace transurf
