#include <swan/metrics.hpp>

#include <cmath>

#include <swan/errors.hpp>

namespace swan {

namespace {

// Effective receive vectors U = G_RF G_BB (M x K) and the cross table
// A = U^H H (K x K) with A(k, j) = u_k^H h_j shared by SINR and MSE.
struct EffectiveLink {
  CMatrix U;
  CMatrix A;
  RVector u_norm2;  // ||u_k||^2
};

EffectiveLink effective_link(const BeamformerState& state, const ChannelMatrix& H) {
  if (H.rows() != state.G_RF.rows() || H.cols() != state.G_BB.cols()) {
    throw std::invalid_argument("channel dimensions do not match the beamformer state");
  }
  EffectiveLink link;
  link.U = state.G_RF * state.G_BB;
  link.A = link.U.adjoint() * H;
  link.u_norm2 = link.U.colwise().squaredNorm().real();
  return link;
}

double sinr_from_link(const EffectiveLink& link, const RadioConfig& radio, int k) {
  if (link.u_norm2[k] < 1e-300) {
    throw DegenerateReceiverError("effective receive vector is zero for user " +
                                  std::to_string(k));
  }
  const double signal = std::norm(link.A(k, k));
  double interference = 0.0;
  for (Eigen::Index j = 0; j < link.A.cols(); ++j) {
    if (j != k) interference += std::norm(link.A(k, j));
  }
  return signal / (interference + (radio.sigma2 / radio.P) * link.u_norm2[k]);
}

double mse_from_link(const EffectiveLink& link, const RadioConfig& radio, int k) {
  double quad = 0.0;
  for (Eigen::Index j = 0; j < link.A.cols(); ++j) quad += std::norm(link.A(k, j));
  return radio.P * quad - 2.0 * radio.P * link.A(k, k).real() +
         radio.sigma2 * link.u_norm2[k] + radio.P;
}

}  // namespace

void BeamformerState::validate() const {
  if (G_RF.rows() != mask.rows() || G_RF.cols() != mask.cols()) {
    throw std::invalid_argument("BeamformerState: mask shape does not match G_RF");
  }
  if (G_BB.rows() != G_RF.cols()) {
    throw std::invalid_argument("BeamformerState: G_BB rows must equal G_RF columns");
  }
  if (omega.size() != G_BB.cols()) {
    throw std::invalid_argument("BeamformerState: omega length must equal user count");
  }
  for (Eigen::Index i = 0; i < G_RF.rows(); ++i) {
    for (Eigen::Index j = 0; j < G_RF.cols(); ++j) {
      if (mask(i, j)) {
        if (std::abs(std::abs(G_RF(i, j)) - 1.0) > 1e-9) {
          throw std::invalid_argument("BeamformerState: masked G_RF entry is not unit-modulus");
        }
      } else if (G_RF(i, j) != Complex(0.0, 0.0)) {
        throw std::invalid_argument("BeamformerState: off-mask G_RF entry is not zero");
      }
    }
  }
  for (Eigen::Index k = 0; k < omega.size(); ++k) {
    if (!(omega[k] > 0.0)) {
      throw std::invalid_argument("BeamformerState: omega must be strictly positive");
    }
  }
}

double sinr(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio,
            int k) {
  if (k < 0 || k >= state.K()) throw std::invalid_argument("sinr: user index out of range");
  return sinr_from_link(effective_link(state, H), radio, k);
}

RVector sinr_all(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio) {
  const EffectiveLink link = effective_link(state, H);
  RVector g(state.K());
  for (int k = 0; k < state.K(); ++k) g[k] = sinr_from_link(link, radio, k);
  return g;
}

double sum_rate(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio) {
  const RVector g = sinr_all(state, H, radio);
  double rate = 0.0;
  for (Eigen::Index k = 0; k < g.size(); ++k) rate += std::log2(1.0 + g[k]);
  return rate;
}

double mse_per_user(const BeamformerState& state, const ChannelMatrix& H,
                    const RadioConfig& radio, int k) {
  if (k < 0 || k >= state.K()) throw std::invalid_argument("mse_per_user: user index out of range");
  return mse_from_link(effective_link(state, H), radio, k);
}

RVector mse_all(const BeamformerState& state, const ChannelMatrix& H, const RadioConfig& radio) {
  const EffectiveLink link = effective_link(state, H);
  RVector e(state.K());
  for (int k = 0; k < state.K(); ++k) e[k] = mse_from_link(link, radio, k);
  return e;
}

double weighted_mse_objective(const BeamformerState& state, const ChannelMatrix& H,
                              const RadioConfig& radio) {
  const RVector e = mse_all(state, H, radio);
  double obj = 0.0;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    obj += state.omega[k] * e[k] - std::log(state.omega[k]);
  }
  return obj;
}

double energy_efficiency(double rate, const RadioConfig& radio, const EnergyModel& em, int N_RF,
                         int M, long long n_ps) {
  const double total =
      radio.P + N_RF * em.P_RF + M * em.P_PA + static_cast<double>(n_ps) * em.P_PS;
  return rate / total;
}

long long phase_shifter_count(Architecture arch, int M, int N_RF) {
  switch (arch) {
    case Architecture::SwanFc:
    case Architecture::MmimoFc:
      return static_cast<long long>(M) * N_RF;
    case Architecture::SwanPc:
      return M;
    case Architecture::ConvPass:
      return 0;
  }
  return 0;
}

}  // namespace swan
