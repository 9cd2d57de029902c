#include <swan/fc_beamforming.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <swan/errors.hpp>
#include <swan/pinching_search.hpp>

#include "bcd_detail.hpp"
#include "pinch_objectives.hpp"

namespace swan {

using detail::hpd_inverse;
using detail::in_step;
using detail::small_change;

WmmseCache WmmseCache::make(const ChannelMatrix& H, const CMatrix& W_BB, const RVector& omega,
                            const RadioConfig& radio) {
  const Eigen::Index K = H.cols();
  if (W_BB.cols() != K || omega.size() != K) {
    throw std::invalid_argument("WmmseCache: user-count mismatch between H, W_BB and omega");
  }
  WmmseCache c;
  c.R = H * H.adjoint();
  c.R += (radio.sigma2 / radio.P) * CMatrix::Identity(H.rows(), H.rows());
  const Eigen::VectorXcd w = omega.cast<Complex>();
  c.C = radio.P * (W_BB * w.asDiagonal() * W_BB.adjoint());
  c.B = 2.0 * radio.P * (H * w.asDiagonal() * W_BB.adjoint());
  c.c0 = radio.P * omega.sum();
  return c;
}

CMatrix wmmse_digital_update(const CMatrix& W_RF, const ChannelMatrix& H,
                             const RadioConfig& radio) {
  if (W_RF.rows() != H.rows()) {
    throw std::invalid_argument("wmmse_digital_update: combiner and channel row counts differ");
  }
  const CMatrix Hc = W_RF.adjoint() * H;
  CMatrix A = Hc * Hc.adjoint();
  A += (radio.sigma2 / radio.P) * (W_RF.adjoint() * W_RF);
  Eigen::LLT<CMatrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NumericError("wmmse_digital_update: system matrix is not positive definite");
  }
  return llt.solve(Hc);
}

RVector wmmse_weight_update(const RVector& mse) {
  RVector omega(mse.size());
  for (Eigen::Index k = 0; k < mse.size(); ++k) {
    if (!(mse[k] > 0.0)) {
      throw std::domain_error("wmmse_weight_update: MSE must be strictly positive");
    }
    omega[k] = 1.0 / mse[k];
  }
  return omega;
}

ObjectiveEval wmmse_analog_objective(const CMatrix& W_RF, const WmmseCache& cache) {
  ObjectiveEval out;
  const CMatrix RW = cache.R * W_RF;
  const CMatrix G = W_RF.adjoint() * RW;  // W^H R W
  out.value = G.cwiseProduct(cache.C.transpose()).sum().real() -
              W_RF.conjugate().cwiseProduct(cache.B).sum().real() + cache.c0;
  out.grad = 2.0 * (RW * cache.C) - cache.B;
  return out;
}

ManifoldObjective wmmse_analog_oracle(const WmmseCache& cache) {
  auto shared = std::make_shared<WmmseCache>(cache);
  ManifoldObjective obj;
  obj.sense = OptimizeSense::Minimize;
  obj.value = [shared](const CMatrix& W) { return wmmse_analog_objective(W, *shared).value; };
  obj.euclid_grad = [shared](const CMatrix& W) {
    return CMatrix(2.0 * (shared->R * W * shared->C) - shared->B);
  };
  return obj;
}

CMatrix zf_digital_update(const CMatrix& W_RF, const ChannelMatrix& H) {
  const Eigen::Index K = H.cols();
  const Eigen::Index N = W_RF.cols();
  if (K > N) {
    throw ZfInfeasibleError("zero forcing needs at least as many RF chains as users");
  }
  const CMatrix Hc = W_RF.adjoint() * H;
  const CMatrix D = W_RF.adjoint() * W_RF;
  Eigen::LLT<CMatrix> lltD(D);
  if (lltD.info() != Eigen::Success) {
    throw ZfInfeasibleError("zf_digital_update: analog combiner is rank deficient");
  }
  const CMatrix DinvHc = lltD.solve(Hc);
  const CMatrix T2 = Hc.adjoint() * DinvHc;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(T2);
  if (eig.info() != Eigen::Success) {
    throw ZfInfeasibleError("zf_digital_update: effective channel decomposition failed");
  }
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || !(lo > hi * 1e-12)) {
    throw ZfInfeasibleError("zf_digital_update: effective channel is rank deficient");
  }
  Eigen::LLT<CMatrix> lltT2(T2);
  if (lltT2.info() != Eigen::Success) {
    throw ZfInfeasibleError("zf_digital_update: effective Gram matrix is not positive definite");
  }
  return DinvHc * lltT2.solve(CMatrix::Identity(K, K));
}

ObjectiveEval zf_analog_objective(const CMatrix& W_RF, const ChannelMatrix& H,
                                  const RadioConfig& radio) {
  const Eigen::Index K = H.cols();
  if (K > W_RF.cols()) {
    throw ZfInfeasibleError("zero forcing needs at least as many RF chains as users");
  }
  const double c = radio.P / radio.sigma2;
  const CMatrix D = W_RF.adjoint() * W_RF;
  const CMatrix T1 = hpd_inverse(D, "zf_analog_objective: analog Gram matrix");
  const CMatrix Hc = W_RF.adjoint() * H;
  const CMatrix T1Hc = T1 * Hc;
  const CMatrix T2 = Hc.adjoint() * T1Hc;
  const CMatrix T3 = hpd_inverse(T2, "zf_analog_objective: effective Gram matrix");

  ObjectiveEval out;
  out.value = 0.0;
  RVector t4(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double t = T3(k, k).real();
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw ZfInfeasibleError("zf_analog_objective: effective channel is rank deficient");
    }
    out.value += std::log2(1.0 + c / t);
    t4[k] = -c / (std::numbers::ln2 * t * (t + c));
  }
  const CMatrix S = T3 * t4.cast<Complex>().asDiagonal() * T3;
  const CMatrix SHt = S * T1Hc.adjoint();  // K x N_RF
  out.grad = 2.0 * (W_RF * (T1Hc * SHt) - H * SHt);
  return out;
}

ManifoldObjective zf_analog_oracle(const ChannelMatrix& H, const RadioConfig& radio) {
  auto shared = std::make_shared<ChannelMatrix>(H);
  ManifoldObjective obj;
  obj.sense = OptimizeSense::Maximize;
  obj.value = [shared, radio](const CMatrix& W) {
    return zf_analog_objective(W, *shared, radio).value;
  };
  obj.euclid_grad = [shared, radio](const CMatrix& W) {
    return zf_analog_objective(W, *shared, radio).grad;
  };
  return obj;
}

namespace {

struct PinchContext {
  const GeometryConfig* geom = nullptr;
  const UserLayout* users = nullptr;
  const SearchGrid* grid = nullptr;
};

void drive_bcd(FcVariant variant, const RadioConfig& radio, ChannelMatrix& H,
               const PinchContext* pinch, BcdResult& res, const BcdOptions& opt) {
  const bool wmmse = variant == FcVariant::Wmmse;
  BeamformerState& st = res.state;

  auto record_identity = [&] {
    const RVector e = mse_all(st, H, radio);
    const RVector g = sinr_all(st, H, radio);
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      const double err = std::abs(e[k] * (1.0 + g[k]) / radio.P - 1.0);
      res.diag.max_mmse_identity_err = std::max(res.diag.max_mmse_identity_err, err);
    }
  };
  auto record_zf_residual = [&] {
    const CMatrix Hc = st.G_RF.adjoint() * H;
    const double r =
        (st.G_BB.adjoint() * Hc - CMatrix::Identity(st.K(), st.K())).norm();
    res.diag.max_zf_residual = std::max(res.diag.max_zf_residual, r);
  };
  auto record_mse = [&] {
    if (wmmse) res.diag.weighted_mse.push_back(weighted_mse_objective(st, H, radio));
  };

  res.rate_trace.push_back(sum_rate(st, H, radio));

  for (int t = 1; t <= opt.max_outer; ++t) {
    res.outer_iterations = t;

    // Digital combiner.
    if (wmmse) {
      st.G_BB = in_step([&] { return wmmse_digital_update(st.G_RF, H, radio); }, "digital", t);
      record_identity();
    } else {
      st.G_BB = in_step([&] { return zf_digital_update(st.G_RF, H); }, "digital", t);
      record_zf_residual();
    }
    record_mse();

    const double rate = sum_rate(st, H, radio);
    res.rate_trace.push_back(rate);
    // Consecutive post-digital rates straddle one full analog/pinching/weight
    // cycle only from the second outer iteration on; the first comparison
    // would see a zero-work step whenever the caller seeded the digital stage.
    if (t >= 2 && small_change(res.rate_trace[res.rate_trace.size() - 2], rate, opt.tol)) {
      res.converged = true;
      return;  // state carries the fresh digital combiner
    }

    // Analog combiner on the unit-modulus manifold.
    const ManifoldObjective oracle =
        wmmse ? wmmse_analog_oracle(WmmseCache::make(H, st.G_BB, st.omega, radio))
              : zf_analog_oracle(H, radio);
    const ManifoldResult mres = in_step(
        [&] { return minimize_on_circle_manifold(oracle, st.G_RF, st.mask, opt.manifold); },
        "analog", t);
    st.G_RF = mres.W;
    record_mse();

    // Antenna positions.
    if (pinch != nullptr) {
      in_step(
          [&] {
            GaussSeidelResult gs;
            if (wmmse) {
              detail::WmmsePinchObjective obj(*pinch->geom, radio, *pinch->users,
                                              st.G_RF * st.G_BB, st.omega, res.x);
              gs = gauss_seidel([&obj](const PinchPositions& x) { return obj(x); },
                                SearchSense::Minimize, *pinch->geom, *pinch->grid, res.x,
                                opt.gs_tol, opt.gs_max_pass);
            } else {
              const CMatrix T1 =
                  hpd_inverse(st.G_RF.adjoint() * st.G_RF, "pinching: analog Gram matrix");
              detail::ZfPinchObjective obj(*pinch->geom, radio, *pinch->users, st.G_RF, T1,
                                           res.x);
              gs = gauss_seidel([&obj](const PinchPositions& x) { return obj(x); },
                                SearchSense::Maximize, *pinch->geom, *pinch->grid, res.x,
                                opt.gs_tol, opt.gs_max_pass);
            }
            res.x = gs.x;
            H = uplink_channel(*pinch->geom, radio, res.x, *pinch->users);
            return 0;
          },
          "pinching", t);
      record_mse();
    }

    // MSE weights.
    if (wmmse) {
      const RVector e = mse_all(st, H, radio);
      st.omega = wmmse_weight_update(e);
      for (Eigen::Index k = 0; k < e.size(); ++k) {
        res.diag.max_weight_stationarity_err =
            std::max(res.diag.max_weight_stationarity_err, std::abs(st.omega[k] * e[k] - 1.0));
      }
      record_mse();
    }
  }

  // Iteration budget exhausted: refresh the digital combiner so the returned
  // state is consistent with the last trace entry.
  if (wmmse) {
    st.G_BB = in_step([&] { return wmmse_digital_update(st.G_RF, H, radio); }, "digital",
                      opt.max_outer + 1);
    record_identity();
  } else {
    st.G_BB =
        in_step([&] { return zf_digital_update(st.G_RF, H); }, "digital", opt.max_outer + 1);
    record_zf_residual();
  }
  record_mse();
  res.rate_trace.push_back(sum_rate(st, H, radio));
}

void check_init(const BeamformerState& init, Eigen::Index M, int K, FcVariant variant) {
  init.validate();
  if (init.G_RF.rows() != M) {
    throw std::invalid_argument("bcd_fc: analog combiner rows must match antenna count");
  }
  if (init.K() != K) {
    throw std::invalid_argument("bcd_fc: digital combiner user count mismatch");
  }
  if (variant == FcVariant::Zf && K > init.N_RF()) {
    throw ZfInfeasibleError("bcd_fc: zero forcing needs at least as many RF chains as users");
  }
}

}  // namespace

BcdResult bcd_fc(FcVariant variant, const GeometryConfig& geom, const RadioConfig& radio,
                 const UserLayout& users, const BeamformerState& init,
                 const PinchPositions& init_x, const BcdOptions& options) {
  require_feasible(geom, init_x);
  check_init(init, geom.M, users.K(), variant);

  BcdResult res;
  res.state = init;
  res.x = init_x;
  ChannelMatrix H = uplink_channel(geom, radio, res.x, users);

  if (options.enable_pinching) {
    const SearchGrid grid = SearchGrid::make(geom, options.search_resolution);
    PinchContext pinch{&geom, &users, &grid};
    drive_bcd(variant, radio, H, &pinch, res, options);
  } else {
    drive_bcd(variant, radio, H, nullptr, res, options);
  }
  return res;
}

BcdResult bcd_fc_fixed_channel(FcVariant variant, const ChannelMatrix& H,
                               const RadioConfig& radio, const BeamformerState& init,
                               const BcdOptions& options) {
  check_init(init, H.rows(), static_cast<int>(H.cols()), variant);
  BcdResult res;
  res.state = init;
  res.x = PinchPositions(0);
  ChannelMatrix Hwork = H;
  drive_bcd(variant, radio, Hwork, nullptr, res, options);
  return res;
}

}  // namespace swan
