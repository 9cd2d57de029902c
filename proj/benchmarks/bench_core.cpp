// Microbenchmarks for the solver hot paths: channel synthesis, the digital
// and analog objective evaluations, the element-wise phase pass, and one
// small end-to-end descent.

#include <benchmark/benchmark.h>

#include <swan/channel.hpp>
#include <swan/fc_beamforming.hpp>
#include <swan/harness.hpp>
#include <swan/pc_beamforming.hpp>
#include <swan/rng.hpp>

namespace {

struct Fixture {
  swan::GeometryConfig geom;
  swan::RadioConfig radio;
  swan::UserLayout users;
  swan::PinchPositions x;
  swan::ChannelMatrix H;
  swan::CMatrix W_RF;
  swan::CMatrix W_BB;
  swan::RVector omega;

  static swan::UserLayout sample(const swan::GeometryConfig& geom, int K) {
    swan::TrialRng rng(7, 0);
    return swan::sample_users(geom, rng, K);
  }

  Fixture(int M, int N_RF, int K)
      : geom(swan::GeometryConfig::make(80.0, 20.0, 3.0, M, 0.005)),
        radio(swan::RadioConfig::make(28e9, 1.4, 0.08, 0.01, 1e-11)),
        users(sample(geom, K)) {
    swan::TrialRng rng(8, 0);
    x = swan::segment_midpoints(geom);
    H = swan::uplink_channel(geom, radio, x, users);
    W_RF = swan::random_unit_matrix(rng, swan::BoolMatrix::Constant(M, N_RF, true));
    W_BB = swan::wmmse_digital_update(W_RF, H, radio);
    omega = swan::RVector::Ones(K);
  }
};

void BM_uplink_channel(benchmark::State& state) {
  Fixture f(50, 8, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swan::uplink_channel(f.geom, f.radio, f.x, f.users));
  }
}
BENCHMARK(BM_uplink_channel);

void BM_wmmse_digital_update(benchmark::State& state) {
  Fixture f(16, 8, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swan::wmmse_digital_update(f.W_RF, f.H, f.radio));
  }
}
BENCHMARK(BM_wmmse_digital_update);

void BM_wmmse_analog_objective(benchmark::State& state) {
  Fixture f(16, 8, 4);
  const auto cache = swan::WmmseCache::make(f.H, f.W_BB, f.omega, f.radio);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swan::wmmse_analog_objective(f.W_RF, cache));
  }
}
BENCHMARK(BM_wmmse_analog_objective);

void BM_zf_analog_objective(benchmark::State& state) {
  Fixture f(16, 8, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swan::zf_analog_objective(f.W_RF, f.H, f.radio));
  }
}
BENCHMARK(BM_zf_analog_objective);

void BM_elementwise_sweep(benchmark::State& state) {
  const int M = 32, N_RF = 8, K = 4;
  Fixture f(M, N_RF, K);
  const auto topo = swan::build_interleaved(M, N_RF);
  swan::TrialRng rng(11, 0);
  const swan::CMatrix F_RF = swan::random_unit_matrix(rng, topo.mask);
  const swan::CMatrix F_BB = swan::pc_digital_update(F_RF, f.H, f.radio);
  const auto cache = swan::WmmseCache::make(f.H, F_BB, f.omega, f.radio);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swan::elementwise_sweep(F_RF, topo.mask, cache));
  }
}
BENCHMARK(BM_elementwise_sweep);

void BM_bcd_fc_wmmse_small(benchmark::State& state) {
  Fixture f(8, 4, 2);
  swan::BcdOptions opt;
  opt.max_outer = 3;
  const swan::BeamformerState init{f.W_RF, f.W_BB,
                                   swan::BoolMatrix::Constant(8, 4, true), f.omega};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        swan::bcd_fc(swan::FcVariant::Wmmse, f.geom, f.radio, f.users, init, f.x, opt));
  }
}
BENCHMARK(BM_bcd_fc_wmmse_small);

}  // namespace

BENCHMARK_MAIN();
