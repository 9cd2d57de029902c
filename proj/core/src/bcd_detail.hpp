#pragma once

// Internal helpers shared by the block-coordinate-descent drivers.

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include <swan/errors.hpp>
#include <swan/types.hpp>

namespace swan::detail {

inline bool small_change(double prev, double cur, double tol) {
  return std::abs(cur - prev) < tol * std::max(std::abs(prev), 1e-12);
}

inline std::string with_step(const std::exception& e, const char* step, int iter) {
  return std::string(e.what()) + " [" + step + ", outer iteration " + std::to_string(iter) + "]";
}

template <typename F>
auto in_step(F&& f, const char* step, int iter) -> decltype(f()) {
  try {
    return f();
  } catch (const ZfInfeasibleError& e) {
    throw ZfInfeasibleError(with_step(e, step, iter));
  } catch (const NumericError& e) {
    throw NumericError(with_step(e, step, iter));
  } catch (const DegenerateReceiverError& e) {
    throw DegenerateReceiverError(with_step(e, step, iter));
  } catch (const FeasibilityError& e) {
    throw FeasibilityError(with_step(e, step, iter));
  }
}

// Hermitian positive-definite inverse via Cholesky.
inline CMatrix hpd_inverse(const CMatrix& A, const char* what) {
  Eigen::LLT<CMatrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw ZfInfeasibleError(std::string(what) + " is not positive definite");
  }
  return llt.solve(CMatrix::Identity(A.rows(), A.cols()));
}

}  // namespace swan::detail
