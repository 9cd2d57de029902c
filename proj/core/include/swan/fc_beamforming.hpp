#pragma once

#include <vector>

#include <swan/channel.hpp>
#include <swan/geometry.hpp>
#include <swan/manifold.hpp>
#include <swan/metrics.hpp>
#include <swan/types.hpp>

namespace swan {

enum class FcVariant { Wmmse, Zf };

// Quadratic-form description of the weighted sum-MSE as a function of the
// analog combiner alone, with digital combiner and weights frozen:
//   J(W) = tr{W^H R W C} - Re tr{W^H B} + c0.
struct WmmseCache {
  CMatrix R;        // M x M:      sum_j h_j h_j^H + (sigma2/P) I
  CMatrix C;        // N_RF x N_RF: P * sum_k omega_k w_k w_k^H
  CMatrix B;        // M x N_RF:   2P * sum_k omega_k h_k w_k^H
  double c0 = 0.0;  // P * sum_k omega_k

  static WmmseCache make(const ChannelMatrix& H, const CMatrix& W_BB, const RVector& omega,
                         const RadioConfig& radio);
};

// Per-user MMSE digital combiner: column k solves
//   (Hc Hc^H + (sigma2/P) W_RF^H W_RF) w_k = hc_k,  Hc = W_RF^H H.
// Minimizes every user's MSE simultaneously; independent of the weights.
CMatrix wmmse_digital_update(const CMatrix& W_RF, const ChannelMatrix& H,
                             const RadioConfig& radio);

// omega_k = 1/e_k; requires e_k > 0.
RVector wmmse_weight_update(const RVector& mse);

struct ObjectiveEval {
  double value = 0.0;
  CMatrix grad;  // Euclidean gradient, convention df = Re tr{G^H dW}
};

ObjectiveEval wmmse_analog_objective(const CMatrix& W_RF, const WmmseCache& cache);
ManifoldObjective wmmse_analog_oracle(const WmmseCache& cache);

// Minimum-norm zero-forcing digital combiner:
//   W_BB = D^{-1} Hc (Hc^H D^{-1} Hc)^{-1},  D = W_RF^H W_RF,
// so that W_BB^H Hc = I. Throws ZfInfeasibleError if Hc is rank deficient
// (including K > N_RF) or D is singular.
CMatrix zf_digital_update(const CMatrix& W_RF, const ChannelMatrix& H);

// Sum rate under the zero-forcing receiver as a function of the analog
// combiner: f(W) = sum_k log2(1 + c/t_k) with t_k the k-th diagonal entry of
// (Hc^H (W^H W)^{-1} Hc)^{-1} and c = P/sigma2.
ObjectiveEval zf_analog_objective(const CMatrix& W_RF, const ChannelMatrix& H,
                                  const RadioConfig& radio);
ManifoldObjective zf_analog_oracle(const ChannelMatrix& H, const RadioConfig& radio);

struct BcdOptions {
  double tol = 1e-8;               // fractional sum-rate change between outer iterations
  int max_outer = 100;
  double search_resolution = 0.01;  // meters
  int gs_max_pass = 1;              // position-search passes per outer iteration
  double gs_tol = 1e-8;
  bool enable_pinching = true;      // false: fixed antenna positions (fixed channel)
  ManifoldOptions manifold{};       // inner conjugate-gradient settings
};

struct BcdDiagnostics {
  // Weighted sum-MSE recorded after every sub-step in execution order
  // (digital, analog, pinching, weights, digital, ...). WMMSE runs only.
  std::vector<double> weighted_mse;
  // max_k |e_k (1 + gamma_k) / P - 1| immediately after each digital update.
  double max_mmse_identity_err = 0.0;
  // max_k |omega_k e_k - 1| immediately after each weight update.
  double max_weight_stationarity_err = 0.0;
  // max ||W_BB^H Hc - I||_F after each digital update (ZF runs only).
  double max_zf_residual = 0.0;
};

struct BcdResult {
  BeamformerState state;
  PinchPositions x;
  std::vector<double> rate_trace;  // rate_trace[0] is the rate of the initial state
  int outer_iterations = 0;
  bool converged = false;
  BcdDiagnostics diag;
};

// Block-coordinate descent over digital combiner, analog combiner (Riemannian
// CG), antenna positions (coordinate grid search), and, for WMMSE, the MSE
// weights. The returned state carries a freshly updated digital combiner, so
// rate_trace.back() equals the sum rate recomputed from the returned state.
BcdResult bcd_fc(FcVariant variant, const GeometryConfig& geom, const RadioConfig& radio,
                 const UserLayout& users, const BeamformerState& init,
                 const PinchPositions& init_x, const BcdOptions& options = {});

// Fixed-channel variant (no position optimization): used for conventional
// arrays whose channel does not depend on adjustable antenna positions.
BcdResult bcd_fc_fixed_channel(FcVariant variant, const ChannelMatrix& H,
                               const RadioConfig& radio, const BeamformerState& init,
                               const BcdOptions& options = {});

}  // namespace swan
