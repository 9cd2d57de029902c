#pragma once

#include <vector>

#include <swan/fc_beamforming.hpp>
#include <swan/geometry.hpp>
#include <swan/metrics.hpp>
#include <swan/types.hpp>

namespace swan {

// Partially-connected wiring where consecutive antennas cycle through the RF
// chains round-robin, obtained by row-permuting the sequential block layout.
struct InterleavedTopology {
  int M = 0;
  int N_RF = 0;
  int N_par = 0;              // antennas per chain
  std::vector<int> row_map;   // row_map[i] = sequential row placed at row i
  BoolMatrix mask;            // M x N_RF, row i supported at chain i mod N_RF
};

// Requires N_RF to divide M; throws TopologyError otherwise.
InterleavedTopology build_interleaved(int M, int N_RF);

// Identical closed form to wmmse_digital_update; the analog combiner is
// simply sparse here.
CMatrix pc_digital_update(const CMatrix& F_RF, const ChannelMatrix& H, const RadioConfig& radio);

// Optimal unit-modulus value of one supported analog entry with every other
// entry frozen: [F_RF]_{m,n} = exp(j * arg(c3)) with
//   c3 = B_{m,n} - 2 [R F' C]_{m,n},  F' = F_RF with entry (m,n) zeroed.
// A zero c3 leaves the entry unchanged (any phase is optimal).
CMatrix elementwise_phase_update(const CMatrix& F_RF, const WmmseCache& cache, int m, int n);

// One row-major pass of elementwise_phase_update over all supported entries,
// reusing fresh values within the pass; never increases the weighted MSE.
CMatrix elementwise_sweep(const CMatrix& F_RF, const BoolMatrix& mask, const WmmseCache& cache);

// WMMSE block-coordinate descent for the partially-connected receiver:
// digital combiner, element-wise analog phase pass, antenna positions,
// MSE weights. init.mask must equal topo.mask.
BcdResult bcd_pc(const GeometryConfig& geom, const RadioConfig& radio, const UserLayout& users,
                 const InterleavedTopology& topo, const BeamformerState& init,
                 const PinchPositions& init_x, const BcdOptions& options = {});

}  // namespace swan
