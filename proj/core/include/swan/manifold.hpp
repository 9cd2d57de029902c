#pragma once

#include <functional>
#include <vector>

#include <swan/types.hpp>

namespace swan {

// Optimization over matrices whose supported entries live on the complex unit
// circle; unsupported entries (mask == false) are pinned at zero.

// Orthogonal projection of an ambient gradient G onto the tangent space at W:
//   P_W(G) = G - Re{G .* conj(W)} .* W, with off-mask entries zeroed.
CMatrix tangent_project(const CMatrix& W, const CMatrix& G, const BoolMatrix& mask);

// Retraction back onto the manifold: entrywise (W + alpha D) / |W + alpha D|
// on supported entries. Throws DegenerateRetractionError if a supported entry
// of W + alpha D has magnitude below 1e-300.
CMatrix retract(const CMatrix& W, const CMatrix& D, double alpha, const BoolMatrix& mask);

// Vector transport: project the direction onto the tangent space at the new
// point.
CMatrix transport(const CMatrix& W_new, const CMatrix& D, const BoolMatrix& mask);

// Real inner product Re<A, B> = Re tr{A^H B} restricted to masked entries.
double manifold_inner(const CMatrix& A, const CMatrix& B, const BoolMatrix& mask);

enum class OptimizeSense { Minimize, Maximize };

struct ManifoldObjective {
  std::function<double(const CMatrix&)> value;
  // Euclidean gradient under the convention df = Re tr{G^H dW}.
  std::function<CMatrix(const CMatrix&)> euclid_grad;
  OptimizeSense sense = OptimizeSense::Minimize;
};

struct ManifoldOptions {
  double tol = 1e-8;       // fractional decrease threshold on |f|
  int max_iter = 200;      // conjugate-gradient iteration cap
  double armijo_initial = 1.0;
  double armijo_shrink = 0.5;
  double armijo_slope = 1e-4;
  int armijo_max_backtracks = 50;
};

struct ManifoldResult {
  CMatrix W;
  double objective = 0.0;          // in the caller's sense
  int iterations = 0;
  double grad_norm = 0.0;          // Riemannian gradient norm at the final iterate
  std::vector<double> trace;       // objective after each iteration, caller's sense
};

// Riemannian conjugate gradient (Polak-Ribiere+ with Armijo backtracking)
// over the masked unit-circle manifold from W0. Stops when the fractional
// objective change between successive iterates falls below options.tol, when
// the Armijo search cannot make progress, or at the iteration cap. A
// degenerate retraction inside the line search counts as a failed trial step
// and backtracking continues.
ManifoldResult minimize_on_circle_manifold(const ManifoldObjective& objective, const CMatrix& W0,
                                           const BoolMatrix& mask,
                                           const ManifoldOptions& options = {});

}  // namespace swan
