#pragma once

#include <swan/channel.hpp>

namespace swan {

// Joint receive beamformer: analog combiner G_RF with unit-modulus entries on
// the connectivity mask (zeros elsewhere), digital combiner G_BB, and the
// per-user weights omega carried by the weighted-MSE solver.
struct BeamformerState {
  CMatrix G_RF;     // M x N_RF
  CMatrix G_BB;     // N_RF x K
  BoolMatrix mask;  // M x N_RF
  RVector omega;    // K positive weights

  int M() const { return static_cast<int>(G_RF.rows()); }
  int N_RF() const { return static_cast<int>(G_RF.cols()); }
  int K() const { return static_cast<int>(G_BB.cols()); }

  // Dimensions agree; |G_RF| = 1 on the mask up to 1e-9 and exactly 0 off it;
  // omega strictly positive. Throws std::invalid_argument on violation.
  void validate() const;
};

struct EnergyModel {
  double P_PA{0.1};   // per-antenna power [W]
  double P_RF{0.1};   // per-RF-chain power [W]
  double P_PS{0.01};  // per-phase-shifter power [W]
};

// Uplink SINR of user k:
//   |g_k^H G_RF^H h_k|^2 / (sum_{i != k} |g_k^H G_RF^H h_i|^2
//                           + (sigma2/P) ||g_k^H G_RF^H||^2).
// Throws DegenerateReceiverError when the effective receive vector vanishes.
double sinr(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio,
            int k);
RVector sinr_all(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio);

// sum_k log2(1 + gamma_k), in bits/s/Hz.
double sum_rate(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio);

// Per-user mean squared error for unit-power symbols:
//   P sum_j |w_k^H G_RF^H h_j|^2 - 2 P Re{w_k^H G_RF^H h_k}
//   + sigma2 ||w_k^H G_RF^H||^2 + P.
double mse_per_user(const BeamformerState& state, const ChannelMatrix& H,
                    const RadioConfig& radio, int k);
RVector mse_all(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio);

// sum_k (omega_k e_k - ln omega_k). The weight term uses the natural log so
// that stationarity in omega gives omega_k = 1/e_k exactly.
double weighted_mse_objective(const BeamformerState& state, const ChannelMatrix& H,
                              const RadioConfig& radio);

// rate / (P + N_RF P_RF + M P_PA + n_ps P_PS), in bits/s/Hz/W. The
// phase-shifter count n_ps depends on the architecture and is caller-supplied.
double energy_efficiency(double rate, const RadioConfig& radio, const EnergyModel& em, int N_RF,
                         int M, long long n_ps);

enum class Architecture { SwanFc, SwanPc, ConvPass, MmimoFc };

// FC uses one phase shifter per (antenna, chain) pair, PC one per antenna; the
// single-waveguide baseline has none and the fixed array mirrors FC.
long long phase_shifter_count(Architecture arch, int M, int N_RF);

}  // namespace swan
