#include <swan/pinching_search.hpp>

#include <cmath>
#include <stdexcept>

#include <swan/errors.hpp>

namespace swan {

SearchGrid SearchGrid::make(const GeometryConfig& geom, double resolution) {
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("SearchGrid: resolution must be positive");
  }
  SearchGrid grid;
  grid.resolution = resolution;
  grid.candidates.resize(geom.M);
  const long steps = std::lround(std::floor(geom.L / resolution + 1e-9));
  for (int m = 0; m < geom.M; ++m) {
    const double lo = geom.feed_x[m];
    const double hi = lo + geom.L;
    auto& c = grid.candidates[m];
    c.reserve(steps + 2);
    for (long i = 0; i <= steps; ++i) {
      double x = lo + i * resolution;
      if (x > hi) x = hi;
      if (c.empty() || x > c.back()) c.push_back(x);
    }
    if (c.back() < hi) c.push_back(hi);
  }
  return grid;
}

GaussSeidelResult gauss_seidel(const std::function<double(const PinchPositions&)>& objective,
                               SearchSense sense, const GeometryConfig& geom,
                               const SearchGrid& grid, const PinchPositions& x0, double tol,
                               int max_pass) {
  require_feasible(geom, x0);
  if (static_cast<int>(grid.candidates.size()) != geom.M) {
    throw std::invalid_argument("gauss_seidel: grid does not match segment count");
  }

  const double sgn = sense == SearchSense::Minimize ? 1.0 : -1.0;
  GaussSeidelResult res;
  res.x = x0;
  double f = sgn * objective(res.x);  // work in minimization space
  res.trace.push_back(sgn * f);

  for (int pass = 1; pass <= max_pass; ++pass) {
    res.passes = pass;
    const double f_start = f;
    for (int m = 0; m < geom.M; ++m) {
      double best_val = f;
      double best_x = res.x[m];
      for (const double c : grid.candidates[m]) {
        if (c == res.x[m]) continue;
        // Containment holds by construction; only neighbor spacing can break.
        if (m > 0 && c - res.x[m - 1] < geom.delta_min) continue;
        if (m + 1 < geom.M && res.x[m + 1] - c < geom.delta_min) continue;
        const double saved = res.x[m];
        res.x[m] = c;
        const double v = sgn * objective(res.x);
        res.x[m] = saved;
        if (v < best_val) {
          best_val = v;
          best_x = c;
        }
      }
      if (best_x != res.x[m]) {
        res.x[m] = best_x;
        f = best_val;
      }
    }
    res.trace.push_back(sgn * f);
    if (std::abs(f_start - f) < tol * std::max(std::abs(f_start), 1e-12)) break;
  }

  res.objective = sgn * f;
  return res;
}

}  // namespace swan
