#pragma once

#include <swan/geometry.hpp>
#include <swan/types.hpp>

namespace swan {

// Single-user rate-scaling setup: a user at transverse distance delta_yz from
// the waveguide axis, centered over M odd segments of length L. In-waveguide
// loss is deliberately omitted here; the full simulator keeps it.
struct ScalingParams {
  double P = 0.0;
  double sigma2 = 0.0;
  double eta = 0.0;
  double L = 0.0;
  double delta_yz = 0.0;
  int M = 1;
};

// Best achievable SNR with one RF chain and M phase shifters (coherent
// combining, 1/M power split):
//   (P eta / (M sigma2)) * (1/delta_yz + sum_{m=1}^{(M-1)/2} 2/sqrt(L^2 (m-1/2)^2 + delta_yz^2))^2.
// M must be odd.
double snr_fc_exact(const ScalingParams& p);

// Integral approximation of the sum via asinh; intended for large M.
double snr_fc_approx(const ScalingParams& p);

// Segment count at which the single-chain rate peaks: 2 delta_yz^2 / L.
double fc_peak_segments(const ScalingParams& p);

// Best achievable SNR with one RF chain per antenna (power combining):
//   (P eta / sigma2) * (1/delta_yz^2 + sum_{m=1}^{(M-1)/2} 2/(L^2 (m-1/2)^2 + delta_yz^2)).
// M must be odd.
double snr_pc_exact(const ScalingParams& p);

// atan approximation of the sum; intended for large M.
double snr_pc_approx(const ScalingParams& p);

// Large-M limit of snr_pc_exact: (P eta / sigma2) (1/delta_yz^2 + pi/(L delta_yz)).
double pc_limit(const ScalingParams& p);

double rate_from_snr(double snr);

// Single-user heuristic placement: the antenna on the user's segment sits at
// the user's x; neighbors hug it subject to the spacing floor and their
// segment boundaries.
PinchPositions optimal_placement_single_user(const GeometryConfig& geom, const Vec3& user);

}  // namespace swan
