#include <swan/pc_beamforming.hpp>

#include <cmath>
#include <complex>

#include <swan/errors.hpp>
#include <swan/pinching_search.hpp>

#include "bcd_detail.hpp"
#include "pinch_objectives.hpp"

namespace swan {

using detail::in_step;
using detail::small_change;

InterleavedTopology build_interleaved(int M, int N_RF) {
  if (M < 1 || N_RF < 1) throw TopologyError("build_interleaved: M and N_RF must be positive");
  if (M % N_RF != 0) {
    throw TopologyError("build_interleaved: chain count must divide antenna count");
  }
  InterleavedTopology topo;
  topo.M = M;
  topo.N_RF = N_RF;
  topo.N_par = M / N_RF;
  topo.row_map.resize(M);
  for (int ip = 0; ip < topo.N_par; ++ip) {
    for (int jp = 0; jp < N_RF; ++jp) {
      topo.row_map[ip * N_RF + jp] = jp * topo.N_par + ip;
    }
  }
  topo.mask = BoolMatrix::Constant(M, N_RF, false);
  for (int i = 0; i < M; ++i) topo.mask(i, i % N_RF) = true;
  return topo;
}

CMatrix pc_digital_update(const CMatrix& F_RF, const ChannelMatrix& H,
                          const RadioConfig& radio) {
  return wmmse_digital_update(F_RF, H, radio);
}

CMatrix elementwise_phase_update(const CMatrix& F_RF, const WmmseCache& cache, int m, int n) {
  if (m < 0 || m >= F_RF.rows() || n < 0 || n >= F_RF.cols()) {
    throw std::invalid_argument("elementwise_phase_update: entry index out of range");
  }
  const Complex rfc = (cache.R.row(m) * F_RF * cache.C.col(n))(0, 0);
  const Complex c3 =
      cache.B(m, n) - 2.0 * (rfc - cache.R(m, m) * F_RF(m, n) * cache.C(n, n));
  CMatrix out = F_RF;
  if (c3 != Complex(0.0, 0.0)) out(m, n) = std::polar(1.0, std::arg(c3));
  return out;
}

CMatrix elementwise_sweep(const CMatrix& F_RF, const BoolMatrix& mask, const WmmseCache& cache) {
  if (mask.rows() != F_RF.rows() || mask.cols() != F_RF.cols()) {
    throw std::invalid_argument("elementwise_sweep: mask shape mismatch");
  }
  CMatrix F = F_RF;
  CMatrix G = cache.R * F * cache.C;  // maintained across entry updates
  for (Eigen::Index m = 0; m < F.rows(); ++m) {
    for (Eigen::Index n = 0; n < F.cols(); ++n) {
      if (!mask(m, n)) continue;
      const Complex c3 =
          cache.B(m, n) - 2.0 * (G(m, n) - cache.R(m, m) * F(m, n) * cache.C(n, n));
      if (c3 == Complex(0.0, 0.0)) continue;
      const Complex w_new = std::polar(1.0, std::arg(c3));
      const Complex delta = w_new - F(m, n);
      if (delta != Complex(0.0, 0.0)) G += delta * (cache.R.col(m) * cache.C.row(n));
      F(m, n) = w_new;
    }
  }
  return F;
}

BcdResult bcd_pc(const GeometryConfig& geom, const RadioConfig& radio, const UserLayout& users,
                 const InterleavedTopology& topo, const BeamformerState& init,
                 const PinchPositions& init_x, const BcdOptions& options) {
  require_feasible(geom, init_x);
  init.validate();
  if (topo.M != geom.M) throw TopologyError("bcd_pc: topology antenna count mismatch");
  if (init.G_RF.rows() != topo.M || init.G_RF.cols() != topo.N_RF) {
    throw TopologyError("bcd_pc: combiner shape does not match topology");
  }
  if ((init.mask != topo.mask).any()) {
    throw TopologyError("bcd_pc: initial state mask differs from topology mask");
  }
  if (init.K() != users.K()) throw std::invalid_argument("bcd_pc: user count mismatch");

  BcdResult res;
  res.state = init;
  res.x = init_x;
  BeamformerState& st = res.state;
  ChannelMatrix H = uplink_channel(geom, radio, res.x, users);
  const SearchGrid grid = options.enable_pinching
                              ? SearchGrid::make(geom, options.search_resolution)
                              : SearchGrid{};

  auto record_identity = [&] {
    const RVector e = mse_all(st, H, radio);
    const RVector g = sinr_all(st, H, radio);
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      const double err = std::abs(e[k] * (1.0 + g[k]) / radio.P - 1.0);
      res.diag.max_mmse_identity_err = std::max(res.diag.max_mmse_identity_err, err);
    }
  };
  auto record_mse = [&] {
    res.diag.weighted_mse.push_back(weighted_mse_objective(st, H, radio));
  };

  res.rate_trace.push_back(sum_rate(st, H, radio));

  for (int t = 1; t <= options.max_outer; ++t) {
    res.outer_iterations = t;

    st.G_BB = in_step([&] { return pc_digital_update(st.G_RF, H, radio); }, "digital", t);
    record_identity();
    record_mse();

    const double rate = sum_rate(st, H, radio);
    res.rate_trace.push_back(rate);
    // Consecutive post-digital rates straddle one full sweep/pinching/weight
    // cycle only from the second outer iteration on; the first comparison
    // would see a zero-work step whenever the caller seeded the digital stage.
    if (t >= 2 && small_change(res.rate_trace[res.rate_trace.size() - 2], rate, options.tol)) {
      res.converged = true;
      return res;
    }

    const WmmseCache cache = WmmseCache::make(H, st.G_BB, st.omega, radio);
    st.G_RF = elementwise_sweep(st.G_RF, st.mask, cache);
    record_mse();

    if (options.enable_pinching) {
      in_step(
          [&] {
            detail::WmmsePinchObjective obj(geom, radio, users, st.G_RF * st.G_BB, st.omega,
                                            res.x);
            const GaussSeidelResult gs =
                gauss_seidel([&obj](const PinchPositions& x) { return obj(x); },
                             SearchSense::Minimize, geom, grid, res.x, options.gs_tol,
                             options.gs_max_pass);
            res.x = gs.x;
            H = uplink_channel(geom, radio, res.x, users);
            return 0;
          },
          "pinching", t);
      record_mse();
    }

    const RVector e = mse_all(st, H, radio);
    st.omega = wmmse_weight_update(e);
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      res.diag.max_weight_stationarity_err =
          std::max(res.diag.max_weight_stationarity_err, std::abs(st.omega[k] * e[k] - 1.0));
    }
    record_mse();
  }

  st.G_BB = in_step([&] { return pc_digital_update(st.G_RF, H, radio); }, "digital",
                    options.max_outer + 1);
  record_identity();
  record_mse();
  res.rate_trace.push_back(sum_rate(st, H, radio));
  return res;
}

}  // namespace swan
