#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <swan/errors.hpp>
#include <swan/fc_beamforming.hpp>
#include <swan/metrics.hpp>

#include "../support/oracles.hpp"

using namespace swan;

namespace {

RadioConfig unit_radio(double P = 1.0, double sigma2 = 1.0) {
  return RadioConfig::make(28e9, 1.4, 0.08, P, sigma2);
}

BeamformerState scalar_state(Complex g_rf, Complex g_bb) {
  BeamformerState s;
  s.G_RF = CMatrix::Constant(1, 1, g_rf);
  s.G_BB = CMatrix::Constant(1, 1, g_bb);
  s.mask = BoolMatrix::Constant(1, 1, true);
  s.omega = RVector::Ones(1);
  return s;
}

BeamformerState random_state(std::mt19937& gen, int M, int N_RF, int K) {
  BeamformerState s;
  s.mask = BoolMatrix::Constant(M, N_RF, true);
  s.G_RF = oracle::randc(gen, M, N_RF);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N_RF; ++j) s.G_RF(i, j) /= std::abs(s.G_RF(i, j));
  }
  s.G_BB = oracle::randc(gen, N_RF, K);
  s.omega = RVector::Ones(K);
  return s;
}

}  // namespace

TEST_CASE("scalar SINR evaluates the defining ratio") {
  const RadioConfig r = unit_radio();
  const ChannelMatrix H = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
  CHECK(sinr(scalar_state(1.0, 1.0), H, r, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("SINR is invariant to receiver scaling") {
  std::mt19937 gen(3);
  const RadioConfig r = unit_radio(0.5, 2e-3);
  for (int rep = 0; rep < 10; ++rep) {
    BeamformerState s = random_state(gen, 6, 3, 2);
    const ChannelMatrix H = oracle::randc(gen, 6, 2);
    const double base = sinr(s, H, r, 0);
    s.G_BB.col(0) *= Complex(-2.7, 1.3);
    CHECK(sinr(s, H, r, 0) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("orthogonal effective channels carry no interference") {
  const RadioConfig r = unit_radio(1.0, 1.0);
  BeamformerState s;
  s.mask = BoolMatrix::Constant(2, 2, true);
  s.G_RF = CMatrix(2, 2);
  s.G_RF << 1.0, 1.0, 1.0, -1.0;  // orthogonal unit-modulus columns
  ChannelMatrix H(2, 2);
  H << 1.0, 1.0, 1.0, -1.0;  // h_k aligned with G_RF columns
  s.G_BB = CMatrix::Identity(2, 2);
  s.omega = RVector::Ones(2);
  // u_k = G_RF e_k = h_k, u_k^H h_j = 0 for j != k.
  for (int k = 0; k < 2; ++k) {
    const double expect = 2.0 * 2.0 / (0.0 + (1.0 / 1.0) * 2.0);  // |u^H h|^2 / ((s2/P)||u||^2)
    CHECK(sinr(s, H, r, k) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("sum rate sums per-user log terms") {
  const RadioConfig r = unit_radio();
  const ChannelMatrix H = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
  CHECK(sum_rate(scalar_state(1.0, 1.0), H, r) == doctest::Approx(1.0).epsilon(1e-14));

  SUBCASE("symmetric users get equal rates") {
    BeamformerState s;
    s.mask = BoolMatrix::Constant(1, 1, true);
    s.G_RF = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
    s.G_BB = CMatrix::Constant(1, 2, Complex(1.0, 0.0));
    s.omega = RVector::Ones(2);
    ChannelMatrix H2(1, 2);
    H2 << Complex(0.5, 0.0), Complex(0.0, 0.5);  // same magnitude
    const RVector g = sinr_all(s, H2, unit_radio());
    CHECK(g[0] == doctest::Approx(g[1]).epsilon(1e-14));
  }

  SUBCASE("column permutation of H and G_BB leaves the sum unchanged") {
    std::mt19937 gen(5);
    BeamformerState s = random_state(gen, 6, 3, 3);
    const ChannelMatrix H3 = oracle::randc(gen, 6, 3);
    const double base = sum_rate(s, H3, unit_radio(1.0, 0.1));
    BeamformerState sp = s;
    ChannelMatrix Hp(6, 3);
    const int perm[3] = {2, 0, 1};
    for (int k = 0; k < 3; ++k) {
      Hp.col(k) = H3.col(perm[k]);
      sp.G_BB.col(k) = s.G_BB.col(perm[k]);
    }
    CHECK(sum_rate(sp, Hp, unit_radio(1.0, 0.1)) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("per-user MSE follows the quadratic form") {
  const RadioConfig r = unit_radio();
  const ChannelMatrix H = CMatrix::Constant(1, 1, Complex(1.0, 0.0));

  SUBCASE("zero receiver column gives e = P") {
    CHECK(mse_per_user(scalar_state(1.0, 0.0), H, r, 0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("scalar receiver w = 0.5") {
    CHECK(mse_per_user(scalar_state(1.0, 0.5), H, r, 0) == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("MMSE receiver ties rate, MSE and the product identity together") {
  std::mt19937 gen(11);
  const RadioConfig r = unit_radio(0.01, 1e-5);
  for (int rep = 0; rep < 12; ++rep) {
    const int M = 8, N_RF = 4, K = 2;
    BeamformerState s = random_state(gen, M, N_RF, K);
    const ChannelMatrix H = oracle::randc(gen, M, K, 1e-2);
    s.G_BB = wmmse_digital_update(s.G_RF, H, r);

    const RVector e = mse_all(s, H, r);
    const RVector gamma = sinr_all(s, H, r);

    // rate = -sum log2(e_k / P) at the MMSE receiver
    double rate_from_mse = 0.0;
    for (int k = 0; k < K; ++k) rate_from_mse -= std::log2(e[k] / r.P);
    CHECK(sum_rate(s, H, r) == doctest::Approx(rate_from_mse).epsilon(1e-9));

    // e_k (1 + gamma_k) = P
    for (int k = 0; k < K; ++k) {
      CHECK(e[k] * (1.0 + gamma[k]) == doctest::Approx(r.P).epsilon(1e-9));
    }
  }
}

TEST_CASE("weighted MSE objective and its stationary weights") {
  std::mt19937 gen(17);
  const RadioConfig r = unit_radio(1.0, 0.3);
  BeamformerState s = random_state(gen, 5, 3, 2);
  const ChannelMatrix H = oracle::randc(gen, 5, 2);

  const RVector e = mse_all(s, H, r);
  SUBCASE("unit weights reduce to the plain MSE sum") {
    s.omega = RVector::Ones(2);
    CHECK(weighted_mse_objective(s, H, r) == doctest::Approx(e.sum()).epsilon(1e-12));
  }
  SUBCASE("stationary weights give sum of 1 + ln e") {
    s.omega = e.cwiseInverse();
    double expect = 0.0;
    for (int k = 0; k < 2; ++k) expect += 1.0 + std::log(e[k]);
    CHECK(weighted_mse_objective(s, H, r) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("degenerate receiver is an error, not a zero rate") {
  const RadioConfig r = unit_radio();
  const ChannelMatrix H = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
  const BeamformerState s = scalar_state(1.0, 0.0);
  CHECK_THROWS_AS((void)sinr(s, H, r, 0), DegenerateReceiverError);
}

TEST_CASE("state validation rejects malformed beamformers") {
  std::mt19937 gen(23);
  BeamformerState s = random_state(gen, 4, 2, 2);
  CHECK_NOTHROW(s.validate());

  SUBCASE("off-circle analog entry") {
    s.G_RF(1, 1) *= 1.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("nonzero entry outside the mask") {
    s.mask(2, 0) = false;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("zero entry on the mask is off-circle") {
    s.G_RF(2, 0) = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("nonpositive weight") {
    s.omega[0] = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("digital row count must match chain count") {
    s.G_BB = CMatrix::Ones(3, 2);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
}

TEST_CASE("energy efficiency divides rate by the component power draw") {
  const RadioConfig r = unit_radio(0.01, 1e-11);
  const EnergyModel em;
  SUBCASE("fully-connected phase-shifter bank") {
    const long long nps = phase_shifter_count(Architecture::SwanFc, 50, 25);
    CHECK(nps == 1250);
    CHECK(energy_efficiency(10.0, r, em, 25, 50, nps) ==
          doctest::Approx(0.499750124938).epsilon(1e-11));
  }
  SUBCASE("one shifter per antenna") {
    const long long nps = phase_shifter_count(Architecture::SwanPc, 50, 25);
    CHECK(nps == 50);
    CHECK(energy_efficiency(10.0, r, em, 25, 50, nps) ==
          doctest::Approx(1.24843945069).epsilon(1e-11));
  }
  SUBCASE("no shifters on the single-feed baseline") {
    CHECK(phase_shifter_count(Architecture::ConvPass, 50, 1) == 0);
    CHECK(phase_shifter_count(Architecture::MmimoFc, 50, 25) == 1250);
  }
  SUBCASE("zero rate gives zero efficiency") {
    CHECK(energy_efficiency(0.0, r, em, 25, 50, 1250) == 0.0);
  }
  SUBCASE("strictly decreasing in the shifter count") {
    double prev = energy_efficiency(10.0, r, em, 25, 50, 0);
    for (long long nps : {10LL, 100LL, 1000LL}) {
      const double ee = energy_efficiency(10.0, r, em, 25, 50, nps);
      CHECK(ee < prev);
      prev = ee;
    }
  }
}
