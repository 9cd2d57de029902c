#include <swan/harness.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <swan/channel.hpp>
#include <swan/errors.hpp>
#include <swan/pc_beamforming.hpp>
#include <swan/pinching_search.hpp>

namespace swan {
namespace {

RVector pack_ones(int K) { return RVector::Ones(K); }

BcdOptions bcd_options(const ScenarioConfig& cfg) {
  BcdOptions opt;
  opt.tol = cfg.tol;
  opt.search_resolution = cfg.resolution;
  return opt;
}

struct MethodOutcome {
  RVector user_rates;
  int iterations = 0;
  int N_RF_eff = 0;
  Architecture arch = Architecture::SwanFc;
};

RVector rates_from_state(const BeamformerState& state, const ChannelMatrix& H,
                         const RadioConfig& radio) {
  const RVector gamma = sinr_all(state, H, radio);
  RVector r(gamma.size());
  for (Eigen::Index k = 0; k < gamma.size(); ++k) r[k] = std::log2(1.0 + gamma[k]);
  return r;
}

// ZF-initialized WMMSE: run the zero-forcing descent first and warm-start the
// weighted-MSE descent from its output; with more users than chains the
// zero-forcing stage is undefined and the descent starts from the random
// phases directly.
MethodOutcome run_fc_wmmse(const ScenarioConfig& cfg, const GeometryConfig& geom,
                           const RadioConfig& radio, const UserLayout& users, TrialRng& rng) {
  const BoolMatrix mask = BoolMatrix::Constant(cfg.M, cfg.N_RF, true);
  const CMatrix W_RF = random_unit_matrix(rng, mask);
  const PinchPositions x0 = segment_midpoints(geom);
  const ChannelMatrix H0 = uplink_channel(geom, radio, x0, users);
  const BcdOptions opt = bcd_options(cfg);

  BeamformerState init{W_RF, CMatrix(), mask, pack_ones(cfg.K)};
  int warm_iters = 0;
  PinchPositions x = x0;
  if (cfg.K <= cfg.N_RF) {
    init.G_BB = zf_digital_update(W_RF, H0);
    const BcdResult zf = bcd_fc(FcVariant::Zf, geom, radio, users, init, x0, opt);
    init = zf.state;
    init.omega = pack_ones(cfg.K);
    x = zf.x;
    warm_iters = zf.outer_iterations;
  } else {
    init.G_BB = wmmse_digital_update(W_RF, H0, radio);
  }

  const BcdResult res = bcd_fc(FcVariant::Wmmse, geom, radio, users, init, x, opt);
  const ChannelMatrix H = uplink_channel(geom, radio, res.x, users);
  return {rates_from_state(res.state, H, radio), warm_iters + res.outer_iterations, cfg.N_RF,
          Architecture::SwanFc};
}

MethodOutcome run_fc_zf(const ScenarioConfig& cfg, const GeometryConfig& geom,
                        const RadioConfig& radio, const UserLayout& users, TrialRng& rng) {
  const BoolMatrix mask = BoolMatrix::Constant(cfg.M, cfg.N_RF, true);
  const CMatrix W_RF = random_unit_matrix(rng, mask);
  const PinchPositions x0 = segment_midpoints(geom);
  const ChannelMatrix H0 = uplink_channel(geom, radio, x0, users);
  const BeamformerState init{W_RF, zf_digital_update(W_RF, H0), mask, pack_ones(cfg.K)};
  const BcdResult res = bcd_fc(FcVariant::Zf, geom, radio, users, init, x0, bcd_options(cfg));
  const ChannelMatrix H = uplink_channel(geom, radio, res.x, users);
  return {rates_from_state(res.state, H, radio), res.outer_iterations, cfg.N_RF,
          Architecture::SwanFc};
}

MethodOutcome run_pc_wmmse(const ScenarioConfig& cfg, const GeometryConfig& geom,
                           const RadioConfig& radio, const UserLayout& users, TrialRng& rng) {
  const InterleavedTopology topo = build_interleaved(cfg.M, cfg.N_RF);
  const CMatrix F_RF = random_unit_matrix(rng, topo.mask);
  const PinchPositions x0 = segment_midpoints(geom);
  const ChannelMatrix H0 = uplink_channel(geom, radio, x0, users);
  const BeamformerState init{F_RF, pc_digital_update(F_RF, H0, radio), topo.mask,
                             pack_ones(cfg.K)};
  const BcdResult res = bcd_pc(geom, radio, users, topo, init, x0, bcd_options(cfg));
  const ChannelMatrix H = uplink_channel(geom, radio, res.x, users);
  return {rates_from_state(res.state, H, radio), res.outer_iterations, cfg.N_RF,
          Architecture::SwanPc};
}

MethodOutcome run_mmimo(const ScenarioConfig& cfg, const GeometryConfig& geom,
                        const RadioConfig& radio, const UserLayout& users, TrialRng& rng) {
  const RVector xs = mmimo_array_x(geom, radio);
  const ChannelMatrix H = free_space_channel_at(radio, xs, geom.H, users);
  const BoolMatrix mask = BoolMatrix::Constant(cfg.M, cfg.N_RF, true);
  const CMatrix W_RF = random_unit_matrix(rng, mask);
  const BcdOptions opt = bcd_options(cfg);

  BeamformerState init{W_RF, CMatrix(), mask, pack_ones(cfg.K)};
  int warm_iters = 0;
  if (cfg.K <= cfg.N_RF) {
    init.G_BB = zf_digital_update(W_RF, H);
    const BcdResult zf = bcd_fc_fixed_channel(FcVariant::Zf, H, radio, init, opt);
    init = zf.state;
    init.omega = pack_ones(cfg.K);
    warm_iters = zf.outer_iterations;
  } else {
    init.G_BB = wmmse_digital_update(W_RF, H, radio);
  }

  const BcdResult res = bcd_fc_fixed_channel(FcVariant::Wmmse, H, radio, init, opt);
  return {rates_from_state(res.state, H, radio), warm_iters + res.outer_iterations, cfg.N_RF,
          Architecture::MmimoFc};
}

MethodOutcome run_conv_pass(const ScenarioConfig& cfg, const GeometryConfig& geom,
                            const RadioConfig& radio, const UserLayout& users) {
  const ConvPassResult res =
      conv_pass_optimize(geom, radio, users, cfg.resolution, cfg.tol);
  const CVector h = conv_pass_channel(radio, geom.H, res.x, users);
  return {conv_pass_user_rates(h, radio), res.passes, 1, Architecture::ConvPass};
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

AggregateStats aggregate_of(const std::vector<double>& v) {
  AggregateStats s;
  if (v.empty()) {
    s.mean = s.median = s.stddev = std::nan("");
    return s;
  }
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  s.median = median_of(v);
  if (v.size() > 1) {
    double acc = 0.0;
    for (double x : v) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(v.size() - 1));
  }
  return s;
}

}  // namespace

CVector conv_pass_channel(const RadioConfig& radio, double height, const PinchPositions& x,
                          const UserLayout& users) {
  CVector h = CVector::Zero(users.K());
  for (int k = 0; k < users.K(); ++k) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = 0; m < x.size(); ++m) {
      acc += free_space_entry(radio, x[m], height, users.positions[k]) *
             waveguide_entry(radio, x[m]);
    }
    h[k] = acc;
  }
  return h;
}

RVector conv_pass_user_rates(const CVector& h, const RadioConfig& radio) {
  const double total = radio.P * h.squaredNorm();
  RVector r(h.size());
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    const double sig = radio.P * std::norm(h[k]);
    r[k] = std::log2(1.0 + sig / (total - sig + radio.sigma2));
  }
  return r;
}

ConvPassResult conv_pass_optimize(const GeometryConfig& geom, const RadioConfig& radio,
                                  const UserLayout& users, double resolution, double tol,
                                  int max_pass) {
  const SearchGrid grid = SearchGrid::make(geom, resolution);
  const auto objective = [&](const PinchPositions& x) {
    return conv_pass_user_rates(conv_pass_channel(radio, geom.H, x, users), radio).sum();
  };
  const GaussSeidelResult gs = gauss_seidel(objective, SearchSense::Maximize, geom, grid,
                                            segment_midpoints(geom), tol, max_pass);
  return {gs.x, gs.objective, gs.passes};
}

RVector mmimo_array_x(const GeometryConfig& geom, const RadioConfig& radio) {
  const double spacing = radio.lambda_c / 2.0;
  const double center = geom.D_x / 2.0;
  RVector xs(geom.M);
  for (int i = 0; i < geom.M; ++i) {
    xs[i] = center + (static_cast<double>(i) - (geom.M - 1) / 2.0) * spacing;
  }
  return xs;
}

TrialRecord run_trial(const ScenarioConfig& raw, int trial) {
  ScenarioConfig cfg = raw;
  cfg.finalize();
  const GeometryConfig geom = cfg.geometry();
  const RadioConfig radio = cfg.radio();

  TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
  const UserLayout users = sample_users(geom, rng, cfg.K);

  const auto start = std::chrono::steady_clock::now();
  MethodOutcome out;
  switch (cfg.method) {
    case Method::SwanFcWmmse: out = run_fc_wmmse(cfg, geom, radio, users, rng); break;
    case Method::SwanFcZf: out = run_fc_zf(cfg, geom, radio, users, rng); break;
    case Method::SwanPcWmmse: out = run_pc_wmmse(cfg, geom, radio, users, rng); break;
    case Method::MmimoFcWmmse: out = run_mmimo(cfg, geom, radio, users, rng); break;
    case Method::ConvPass: out = run_conv_pass(cfg, geom, radio, users); break;
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.trial = trial;
  rec.seed = cfg.seed;
  rec.method = cfg.method;
  rec.M = cfg.M;
  rec.N_RF = out.N_RF_eff;
  rec.K = cfg.K;
  rec.P_dBm = cfg.P_dBm;
  rec.per_user_rates.assign(out.user_rates.data(), out.user_rates.data() + out.user_rates.size());
  rec.sum_rate = std::accumulate(rec.per_user_rates.begin(), rec.per_user_rates.end(), 0.0);
  rec.ee = energy_efficiency(rec.sum_rate, radio, EnergyModel{}, out.N_RF_eff, cfg.M,
                             phase_shifter_count(out.arch, cfg.M, out.N_RF_eff));
  rec.iterations = out.iterations;
  rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

ScenarioResults run_scenario(const ScenarioConfig& raw) {
  ScenarioConfig cfg = raw;
  cfg.finalize();

  ScenarioResults out;
  out.cfg = cfg;
  for (int t = 0; t < cfg.trials; ++t) {
    try {
      out.trials.push_back(run_trial(cfg, t));
    } catch (const TopologyError&) {
      throw;  // configuration problem, identical in every trial
    } catch (const UnsupportedVariantError&) {
      throw;
    } catch (const std::exception& e) {
      out.failures.push_back({t, e.what()});
    }
  }

  std::vector<double> rates, ees;
  rates.reserve(out.trials.size());
  ees.reserve(out.trials.size());
  for (const TrialRecord& r : out.trials) {
    rates.push_back(r.sum_rate);
    ees.push_back(r.ee);
  }
  out.rate = aggregate_of(rates);
  out.ee = aggregate_of(ees);
  return out;
}

std::vector<ScenarioResults> run_sweep(const ScenarioConfig& raw) {
  ScenarioConfig cfg = raw;
  cfg.finalize();
  if (!cfg.sweep) throw ConfigError("sweep requested without sweep_key/sweep_values");

  std::vector<ScenarioResults> out;
  out.reserve(cfg.sweep->values.size());
  for (double v : cfg.sweep->values) {
    ScenarioResults r = run_scenario(with_swept_value(cfg, cfg.sweep->key, v));
    r.sweep_key = cfg.sweep->key;
    r.sweep_value = v;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace swan
