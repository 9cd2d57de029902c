#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <swan/geometry.hpp>
#include <swan/types.hpp>

namespace swan {

// Deterministic per-trial random stream: the engine is seeded from the
// (scenario seed, trial index) pair so trials are independent of execution
// order, and uniform doubles are drawn from the top 53 bits to avoid
// distribution-implementation differences.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    gen_.seed(seq);
  }

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline UserLayout sample_users(const GeometryConfig& geom, TrialRng& rng, int K) {
  std::vector<Vec3> users;
  users.reserve(K);
  for (int k = 0; k < K; ++k) {
    const double x = rng.uniform(0.0, geom.D_x);
    const double y = rng.uniform(0.0, geom.D_y);
    users.push_back(Vec3{x, y, 0.0});
  }
  return UserLayout::make(std::move(users));
}

// Unit-modulus phases on the supported entries, exact zeros elsewhere,
// drawn row-major.
inline CMatrix random_unit_matrix(TrialRng& rng, const BoolMatrix& mask) {
  CMatrix W = CMatrix::Zero(mask.rows(), mask.cols());
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
      if (mask(i, j)) W(i, j) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    }
  }
  return W;
}

}  // namespace swan
