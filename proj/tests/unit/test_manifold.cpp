#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <swan/errors.hpp>
#include <swan/manifold.hpp>

#include "../support/oracles.hpp"

using namespace swan;

namespace {

CMatrix unit_phases(std::mt19937& gen, const BoolMatrix& mask) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  CMatrix W = CMatrix::Zero(mask.rows(), mask.cols());
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
      if (mask(i, j)) W(i, j) = std::polar(1.0, u(gen));
    }
  }
  return W;
}

double max_tangency_residual(const CMatrix& T, const CMatrix& W, const BoolMatrix& mask) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (mask(i, j)) {
        worst = std::max(worst, std::abs((T(i, j) * std::conj(W(i, j))).real()));
      }
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("tangent projection removes the radial component") {
  const BoolMatrix m1 = BoolMatrix::Constant(1, 1, true);
  const CMatrix W = CMatrix::Constant(1, 1, Complex(1.0, 0.0));

  CHECK(tangent_project(W, CMatrix::Constant(1, 1, Complex(1.0, 0.0)), m1)(0, 0) ==
        Complex(0.0, 0.0));
  CHECK(tangent_project(W, CMatrix::Constant(1, 1, Complex(0.0, 1.0)), m1)(0, 0) ==
        Complex(0.0, 1.0));
  CHECK(tangent_project(W, CMatrix::Constant(1, 1, Complex(1.0, 1.0)), m1)(0, 0) ==
        Complex(0.0, 1.0));

  SUBCASE("random instances are tangent to 1e-12 and off-mask entries vanish") {
    std::mt19937 gen(2);
    BoolMatrix mask = BoolMatrix::Constant(8, 4, true);
    mask(3, 1) = false;
    mask(7, 0) = false;
    for (int rep = 0; rep < 20; ++rep) {
      const CMatrix W8 = unit_phases(gen, mask);
      const CMatrix T = tangent_project(W8, oracle::randc(gen, 8, 4), mask);
      CHECK(max_tangency_residual(T, W8, mask) <= 1e-12);
      CHECK(T(3, 1) == Complex(0.0, 0.0));
      CHECK(T(7, 0) == Complex(0.0, 0.0));
    }
  }
}

TEST_CASE("retraction renormalizes onto the circle") {
  const BoolMatrix m1 = BoolMatrix::Constant(1, 1, true);
  const CMatrix W = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
  const CMatrix D = CMatrix::Constant(1, 1, Complex(0.0, 1.0));

  SUBCASE("zero step is the identity") {
    CHECK(retract(W, D, 0.0, m1)(0, 0) == Complex(1.0, 0.0));
  }
  SUBCASE("unit tangent step lands at 45 degrees") {
    const Complex out = retract(W, D, 1.0, m1)(0, 0);
    CHECK(out.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(out.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  }
  SUBCASE("every output entry has unit modulus and zeros stay zero") {
    std::mt19937 gen(4);
    BoolMatrix mask = BoolMatrix::Constant(8, 4, true);
    mask(0, 2) = false;
    for (int rep = 0; rep < 20; ++rep) {
      const CMatrix W8 = unit_phases(gen, mask);
      const CMatrix T = tangent_project(W8, oracle::randc(gen, 8, 4), mask);
      const CMatrix R = retract(W8, T, 0.37, mask);
      for (Eigen::Index i = 0; i < 8; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
          if (mask(i, j)) CHECK(std::abs(std::abs(R(i, j)) - 1.0) <= 1e-12);
          else CHECK(R(i, j) == Complex(0.0, 0.0));
        }
      }
    }
  }
  SUBCASE("non-tangent directions are rejected") {
    const CMatrix N = CMatrix::Constant(1, 1, Complex(1.0, 0.0));  // radial
    CHECK_THROWS_AS((void)retract(W, N, 1.0, m1), std::invalid_argument);
  }
}

TEST_CASE("transport projects onto the new tangent space") {
  const BoolMatrix m1 = BoolMatrix::Constant(1, 1, true);
  const CMatrix Wn = CMatrix::Constant(1, 1, std::polar(1.0, 0.9));

  SUBCASE("already-tangent directions pass through") {
    const CMatrix D = CMatrix::Constant(1, 1, Wn(0, 0) * Complex(0.0, 2.0));
    const CMatrix T = transport(Wn, D, m1);
    CHECK(std::abs(T(0, 0) - D(0, 0)) <= 1e-15);
  }
  SUBCASE("the normal direction transports to zero") {
    const CMatrix T = transport(Wn, Wn, m1);
    CHECK(std::abs(T(0, 0)) <= 1e-15);
  }
  SUBCASE("random transports are tangent to 1e-12") {
    std::mt19937 gen(6);
    const BoolMatrix mask = BoolMatrix::Constant(8, 4, true);
    for (int rep = 0; rep < 20; ++rep) {
      const CMatrix W8 = unit_phases(gen, mask);
      const CMatrix T = transport(W8, oracle::randc(gen, 8, 4), mask);
      CHECK(max_tangency_residual(T, W8, mask) <= 1e-12);
    }
  }
}

TEST_CASE("conjugate gradient aligns phases to a target") {
  // f(W) = -Re tr{W^H B} is minimized at W = exp(j angle(B)) with value
  // -sum |B_ij|; Euclidean gradient is -B.
  std::mt19937 gen(8);
  const BoolMatrix mask = BoolMatrix::Constant(6, 3, true);
  const CMatrix W0 = unit_phases(gen, mask);
  const CMatrix B = 2.0 * oracle::randc(gen, 6, 3);

  ManifoldObjective obj;
  obj.value = [&](const CMatrix& W) { return -(W.conjugate().cwiseProduct(B)).sum().real(); };
  obj.euclid_grad = [&](const CMatrix&) { return CMatrix(-B); };
  obj.sense = OptimizeSense::Minimize;

  const ManifoldResult res = minimize_on_circle_manifold(obj, W0, mask);
  const double best = -B.cwiseAbs().sum();
  CHECK(res.objective == doctest::Approx(best).epsilon(1e-6));
  CHECK(res.iterations >= 1);

  SUBCASE("trace is monotone non-increasing") {
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      CHECK(res.trace[i] <= res.trace[i - 1] + 1e-12 * std::abs(res.trace[i - 1]));
    }
  }
  SUBCASE("maximize sense negates internally") {
    ManifoldObjective pos = obj;
    pos.value = [&](const CMatrix& W) { return (W.conjugate().cwiseProduct(B)).sum().real(); };
    pos.euclid_grad = [&](const CMatrix&) { return CMatrix(B); };
    pos.sense = OptimizeSense::Maximize;
    const ManifoldResult up = minimize_on_circle_manifold(pos, W0, mask);
    CHECK(up.objective == doctest::Approx(-best).epsilon(1e-6));
    for (std::size_t i = 1; i < up.trace.size(); ++i) {
      CHECK(up.trace[i] >= up.trace[i - 1] - 1e-12 * std::abs(up.trace[i - 1]));
    }
  }
}

TEST_CASE("zero gradient terminates immediately") {
  const BoolMatrix mask = BoolMatrix::Constant(2, 2, true);
  const CMatrix W0 = CMatrix::Constant(2, 2, Complex(1.0, 0.0));
  ManifoldObjective obj;
  obj.value = [](const CMatrix&) { return 3.0; };
  obj.euclid_grad = [](const CMatrix& W) { return CMatrix(CMatrix::Zero(W.rows(), W.cols())); };
  const ManifoldResult res = minimize_on_circle_manifold(obj, W0, mask);
  CHECK(res.iterations == 1);
  CHECK((res.W - W0).norm() == 0.0);
}

TEST_CASE("non-finite objectives surface as numeric errors") {
  const BoolMatrix mask = BoolMatrix::Constant(1, 1, true);
  const CMatrix W0 = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
  ManifoldObjective obj;
  obj.value = [](const CMatrix&) { return std::numeric_limits<double>::quiet_NaN(); };
  obj.euclid_grad = [](const CMatrix& W) { return CMatrix(CMatrix::Zero(W.rows(), W.cols())); };
  CHECK_THROWS_AS((void)minimize_on_circle_manifold(obj, W0, mask), NumericError);
}

TEST_CASE("Riemannian gradient matches the retraction-curve derivative") {
  std::mt19937 gen(10);
  const BoolMatrix mask = BoolMatrix::Constant(8, 4, true);
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix W = unit_phases(gen, mask);
    const CMatrix A = oracle::randc(gen, 8, 4);
    const auto f = [&](const CMatrix& X) {
      return (X.conjugate().cwiseProduct(A)).sum().real() + 0.5 * (X.adjoint() * X).trace().real();
    };
    // Euclidean gradient of f: A + X (second term: d tr(X^H X) = 2 Re tr(X^H dX)).
    const CMatrix G = A + W;
    const CMatrix Gr = tangent_project(W, G, mask);
    const CMatrix D = tangent_project(W, oracle::randc(gen, 8, 4), mask);
    const double analytic = manifold_inner(Gr, D, mask);
    const double numeric = oracle::fd_directional(f, W, mask, D);
    CHECK(analytic == doctest::Approx(numeric).epsilon(1e-6));
  }
}
