#include <swan/manifold.hpp>

#include <cmath>
#include <string>

#include <swan/errors.hpp>

namespace swan {

namespace {

void check_shapes(const CMatrix& W, const CMatrix& G, const BoolMatrix& mask) {
  if (W.rows() != G.rows() || W.cols() != G.cols() || W.rows() != mask.rows() ||
      W.cols() != mask.cols()) {
    throw std::invalid_argument("manifold: matrix shapes do not match");
  }
}

}  // namespace

CMatrix tangent_project(const CMatrix& W, const CMatrix& G, const BoolMatrix& mask) {
  check_shapes(W, G, mask);
  CMatrix T(W.rows(), W.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (!mask(i, j)) {
        T(i, j) = Complex(0.0, 0.0);
        continue;
      }
      const double radial = (G(i, j) * std::conj(W(i, j))).real();
      T(i, j) = G(i, j) - radial * W(i, j);
    }
  }
  return T;
}

CMatrix retract(const CMatrix& W, const CMatrix& D, double alpha, const BoolMatrix& mask) {
  check_shapes(W, D, mask);
  CMatrix out(W.rows(), W.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (!mask(i, j)) {
        out(i, j) = Complex(0.0, 0.0);
        continue;
      }
      const double radial = (D(i, j) * std::conj(W(i, j))).real();
      if (std::abs(radial) > 1e-9 * std::max(1.0, std::abs(D(i, j)))) {
        throw std::invalid_argument("retract: direction is not tangent at the base point");
      }
      const Complex moved = W(i, j) + alpha * D(i, j);
      const double mag = std::abs(moved);
      if (mag < 1e-300) {
        throw DegenerateRetractionError("retract: zero-magnitude entry at (" +
                                        std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      out(i, j) = moved / mag;
    }
  }
  return out;
}

CMatrix transport(const CMatrix& W_new, const CMatrix& D, const BoolMatrix& mask) {
  return tangent_project(W_new, D, mask);
}

double manifold_inner(const CMatrix& A, const CMatrix& B, const BoolMatrix& mask) {
  check_shapes(A, B, mask);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (mask(i, j)) acc += (std::conj(A(i, j)) * B(i, j)).real();
    }
  }
  return acc;
}

ManifoldResult minimize_on_circle_manifold(const ManifoldObjective& objective, const CMatrix& W0,
                                           const BoolMatrix& mask,
                                           const ManifoldOptions& options) {
  const double sign = objective.sense == OptimizeSense::Maximize ? -1.0 : 1.0;
  auto value = [&](const CMatrix& W) { return sign * objective.value(W); };
  auto egrad = [&](const CMatrix& W) -> CMatrix { return sign * objective.euclid_grad(W); };

  ManifoldResult result;
  result.W = W0;
  double f = value(result.W);
  if (!std::isfinite(f)) throw NumericError("manifold: non-finite objective at iteration 0");

  CMatrix grad = tangent_project(result.W, egrad(result.W), mask);
  if (!grad.allFinite()) throw NumericError("manifold: non-finite gradient at iteration 0");
  CMatrix dir = -grad;
  double grad_norm2 = manifold_inner(grad, grad, mask);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    result.iterations = iter;
    if (grad_norm2 == 0.0) break;

    double slope = manifold_inner(grad, dir, mask);
    if (slope >= 0.0) {  // not a descent direction: restart with steepest descent
      dir = -grad;
      slope = -grad_norm2;
    }

    double alpha = options.armijo_initial;
    bool accepted = false;
    CMatrix W_trial;
    double f_trial = f;
    for (int bt = 0; bt < options.armijo_max_backtracks; ++bt) {
      bool degenerate = false;
      try {
        W_trial = retract(result.W, dir, alpha, mask);
      } catch (const DegenerateRetractionError&) {
        degenerate = true;
      }
      if (!degenerate) {
        f_trial = value(W_trial);
        if (!std::isfinite(f_trial)) {
          throw NumericError("manifold: non-finite objective at iteration " +
                             std::to_string(iter));
        }
        if (f_trial <= f + options.armijo_slope * alpha * slope) {
          accepted = true;
          break;
        }
      }
      alpha *= options.armijo_shrink;
    }
    if (!accepted) break;  // line search stalled; current iterate is the answer

    CMatrix grad_new = tangent_project(W_trial, egrad(W_trial), mask);
    if (!grad_new.allFinite()) {
      throw NumericError("manifold: non-finite gradient at iteration " + std::to_string(iter));
    }
    const CMatrix grad_old_t = transport(W_trial, grad, mask);
    const double grad_new_norm2 = manifold_inner(grad_new, grad_new, mask);
    double beta = 0.0;
    if (grad_norm2 > 0.0) {
      beta = std::max(manifold_inner(grad_new, grad_new - grad_old_t, mask) / grad_norm2, 0.0);
    }
    dir = -grad_new + beta * transport(W_trial, dir, mask);

    const double f_prev = f;
    result.W = W_trial;
    f = f_trial;
    grad = grad_new;
    grad_norm2 = grad_new_norm2;
    result.trace.push_back(sign * f);

    if (std::abs(f_prev - f) < options.tol * std::max(std::abs(f_prev), 1e-12)) break;
  }

  result.objective = sign * f;
  result.grad_norm = std::sqrt(std::max(grad_norm2, 0.0));
  return result;
}

}  // namespace swan
