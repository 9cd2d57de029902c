#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <swan/config.hpp>
#include <swan/fc_beamforming.hpp>
#include <swan/geometry.hpp>
#include <swan/metrics.hpp>
#include <swan/rng.hpp>

namespace swan {

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;  // scenario seed; the trial stream is (seed, trial)
  Method method = Method::SwanFcWmmse;
  int M = 0;
  int N_RF = 0;  // effective RF-chain count (1 for the single-feed baseline)
  int K = 0;
  double P_dBm = 0.0;
  double sum_rate = 0.0;  // bits/s/Hz, equals the sum of per_user_rates
  std::vector<double> per_user_rates;
  double ee = 0.0;  // bits/s/Hz/W
  int iterations = 0;
  double wall_ms = 0.0;
};

struct TrialFailure {
  int trial = 0;
  std::string reason;
};

struct AggregateStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single trial
};

struct ScenarioResults {
  ScenarioConfig cfg;  // finalized configuration actually run
  std::string sweep_key;
  std::optional<double> sweep_value;
  std::vector<TrialRecord> trials;  // successful trials, ordered by index
  std::vector<TrialFailure> failures;
  AggregateStats rate;
  AggregateStats ee;
};

// Runs one trial: seeds the stream from (cfg.seed, trial), samples K user
// positions uniformly over [0, D_x] x [0, D_y], runs the configured method.
// Solver failures propagate as exceptions.
TrialRecord run_trial(const ScenarioConfig& cfg, int trial);

// All trials of one scenario. Per-trial solver failures are recorded with
// their reason, excluded from aggregates, and counted; configuration-level
// errors (unsupported topology or variant) propagate.
ScenarioResults run_scenario(const ScenarioConfig& cfg);

// One ScenarioResults per sweep value. Requires cfg.sweep.
std::vector<ScenarioResults> run_sweep(const ScenarioConfig& cfg);

// Scalar effective channel of the single-feed waveguide baseline: one
// waveguide over [0, D_x] fed at x = 0, all antennas superposed onto one RF
// chain; entry k is sum_m fs_mk * 10^(-kappa x_m / 20) exp(-j 2 pi x_m /
// lambda_g).
CVector conv_pass_channel(const RadioConfig& radio, double height, const PinchPositions& x,
                          const UserLayout& users);

// Per-user rates log2(1 + P|h_k|^2 / (P sum_{j != k} |h_j|^2 + sigma2)) under
// the scalar interference-as-noise receiver.
RVector conv_pass_user_rates(const CVector& h, const RadioConfig& radio);

struct ConvPassResult {
  PinchPositions x;
  double rate = 0.0;
  int passes = 0;
};

// Coordinate grid search (one antenna per length-D_x/M slice) maximizing the
// baseline sum rate from the slice midpoints.
ConvPassResult conv_pass_optimize(const GeometryConfig& geom, const RadioConfig& radio,
                                  const UserLayout& users, double resolution, double tol,
                                  int max_pass = 100);

// Fixed half-wavelength-spaced M-element line along x centered at
// (D_x/2, 0, H): element coordinates for the conventional-array baseline.
RVector mmimo_array_x(const GeometryConfig& geom, const RadioConfig& radio);

}  // namespace swan
