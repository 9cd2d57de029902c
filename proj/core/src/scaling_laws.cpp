#include <swan/scaling_laws.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <swan/errors.hpp>

namespace swan {

namespace {

void check(const ScalingParams& p, bool need_odd) {
  if (!(p.P > 0.0) || !(p.sigma2 > 0.0) || !(p.eta > 0.0) || !(p.L > 0.0)) {
    throw std::invalid_argument("scaling laws: P, sigma2, eta and L must be positive");
  }
  if (!(p.delta_yz > 0.0)) {
    throw std::invalid_argument("scaling laws: delta_yz must be positive");
  }
  if (p.M < 1) throw std::invalid_argument("scaling laws: M must be at least 1");
  if (need_odd && p.M % 2 == 0) {
    throw UnsupportedGeometryError("scaling laws: exact sums require an odd segment count");
  }
}

}  // namespace

double snr_fc_exact(const ScalingParams& p) {
  check(p, true);
  double amp = 1.0 / p.delta_yz;
  for (int m = 1; m <= (p.M - 1) / 2; ++m) {
    const double u = p.L * (m - 0.5);
    amp += 2.0 / std::sqrt(u * u + p.delta_yz * p.delta_yz);
  }
  // (amp * amp) first so the M = 1 value is bit-identical to snr_pc_exact.
  return p.P * p.eta / (p.M * p.sigma2) * (amp * amp);
}

double snr_fc_approx(const ScalingParams& p) {
  check(p, false);
  const double amp = 1.0 / p.delta_yz +
                     (2.0 / p.L) * std::asinh(p.L * p.M / (2.0 * p.delta_yz));
  return p.P * p.eta / (p.M * p.sigma2) * (amp * amp);
}

double fc_peak_segments(const ScalingParams& p) {
  check(p, false);
  return 2.0 * p.delta_yz * p.delta_yz / p.L;
}

double snr_pc_exact(const ScalingParams& p) {
  check(p, true);
  const double inv = 1.0 / p.delta_yz;
  double gain = inv * inv;  // matches snr_fc_exact's M = 1 rounding exactly
  for (int m = 1; m <= (p.M - 1) / 2; ++m) {
    const double u = p.L * (m - 0.5);
    gain += 2.0 / (u * u + p.delta_yz * p.delta_yz);
  }
  return p.P * p.eta / p.sigma2 * gain;
}

double snr_pc_approx(const ScalingParams& p) {
  check(p, false);
  const double gain =
      1.0 / (p.delta_yz * p.delta_yz) +
      (2.0 / (p.L * p.delta_yz)) * std::atan((p.M - 1) * p.L / (2.0 * p.delta_yz));
  return p.P * p.eta / p.sigma2 * gain;
}

double pc_limit(const ScalingParams& p) {
  check(p, false);
  const double gain =
      1.0 / (p.delta_yz * p.delta_yz) + std::numbers::pi / (p.L * p.delta_yz);
  return p.P * p.eta / p.sigma2 * gain;
}

double rate_from_snr(double snr) { return std::log2(1.0 + snr); }

PinchPositions optimal_placement_single_user(const GeometryConfig& geom, const Vec3& user) {
  if (user.x < 0.0 || user.x > geom.D_x) {
    throw std::invalid_argument("optimal_placement_single_user: user outside the service span");
  }
  const int seg = std::min(static_cast<int>(user.x / geom.L), geom.M - 1);
  PinchPositions x(geom.M);
  x[seg] = user.x;
  for (int m = seg + 1; m < geom.M; ++m) {
    x[m] = std::max(x[m - 1] + geom.delta_min, geom.feed_x[m]);
  }
  for (int m = seg - 1; m >= 0; --m) {
    x[m] = std::min(x[m + 1] - geom.delta_min, geom.feed_x[m] + geom.L);
  }
  require_feasible(geom, x);
  return x;
}

}  // namespace swan
