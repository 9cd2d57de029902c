#pragma once

#include <functional>
#include <vector>

#include <swan/geometry.hpp>
#include <swan/types.hpp>

namespace swan {

enum class SearchSense { Minimize, Maximize };

// One-dimensional candidate positions per segment: uniformly spaced at
// `resolution` within [mL, (m+1)L], always including both segment endpoints.
struct SearchGrid {
  double resolution = 0.0;
  std::vector<std::vector<double>> candidates;

  static SearchGrid make(const GeometryConfig& geom, double resolution);
};

struct GaussSeidelResult {
  PinchPositions x;
  double objective = 0.0;
  int passes = 0;
  std::vector<double> trace;  // objective after each pass
};

// Coordinate-wise grid search over antenna positions: each pass sweeps the
// segments in ascending order, trying every candidate for that segment with
// all other positions held fixed, and accepts the best strictly-improving
// feasible candidate. Terminates when the fractional objective change over a
// full pass drops below tol or after max_pass passes. x0 must be feasible.
GaussSeidelResult gauss_seidel(const std::function<double(const PinchPositions&)>& objective,
                               SearchSense sense, const GeometryConfig& geom,
                               const SearchGrid& grid, const PinchPositions& x0, double tol,
                               int max_pass);

}  // namespace swan
