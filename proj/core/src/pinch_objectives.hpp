#pragma once

// Internal: incremental objective evaluators for the position grid search.
// The coordinate sweep changes one antenna position at a time, so each
// evaluator keeps a base state and applies a rank-one correction for the one
// changed channel row; any multi-coordinate difference triggers a full rebase
// (which happens once per accepted move).

#include <limits>

#include <swan/channel.hpp>
#include <swan/geometry.hpp>
#include <swan/types.hpp>

namespace swan::detail {

// Weighted sum-MSE as a function of antenna positions with the effective
// receivers U = W_RF * W_BB and weights held fixed.
class WmmsePinchObjective {
 public:
  WmmsePinchObjective(const GeometryConfig& geom, const RadioConfig& radio,
                      const UserLayout& users, CMatrix U, RVector omega,
                      const PinchPositions& x0)
      : geom_(geom), radio_(radio), users_(users), U_(std::move(U)), omega_(std::move(omega)) {
    const int K = users_.K();
    sigma_term_ = 0.0;
    for (int k = 0; k < K; ++k) {
      sigma_term_ += omega_[k] * (radio_.sigma2 * U_.col(k).squaredNorm() + radio_.P);
    }
    row_.resize(K);
    rebase(x0);
  }

  double operator()(const PinchPositions& x) {
    int changed = -1;
    for (int m = 0; m < geom_.M; ++m) {
      if (x[m] != x_base_[m]) {
        if (changed >= 0) {  // more than one coordinate moved
          rebase(x);
          return value_base_;
        }
        changed = m;
      }
    }
    if (changed < 0) return value_base_;

    const int K = users_.K();
    uplink_channel_row(geom_, radio_, changed, x[changed], users_, row_);
    double quad = 0.0;
    double cross = 0.0;
    for (int k = 0; k < K; ++k) {
      const Complex um = std::conj(U_(changed, k));
      double q = 0.0;
      for (int j = 0; j < K; ++j) {
        const Complex a = A_base_(k, j) + um * (row_[j] - H_base_(changed, j));
        q += std::norm(a);
        if (j == k) cross += omega_[k] * a.real();
      }
      quad += omega_[k] * q;
    }
    return radio_.P * quad - 2.0 * radio_.P * cross + sigma_term_;
  }

 private:
  void rebase(const PinchPositions& x) {
    x_base_ = x;
    H_base_ = uplink_channel(geom_, radio_, x, users_);
    A_base_ = U_.adjoint() * H_base_;
    const int K = users_.K();
    double quad = 0.0;
    double cross = 0.0;
    for (int k = 0; k < K; ++k) {
      quad += omega_[k] * A_base_.row(k).squaredNorm();
      cross += omega_[k] * A_base_(k, k).real();
    }
    value_base_ = radio_.P * quad - 2.0 * radio_.P * cross + sigma_term_;
  }

  const GeometryConfig& geom_;
  const RadioConfig& radio_;
  const UserLayout& users_;
  CMatrix U_;  // M x K
  RVector omega_;
  double sigma_term_ = 0.0;
  PinchPositions x_base_;
  CMatrix H_base_;  // M x K
  CMatrix A_base_;  // K x K, U^H H
  double value_base_ = 0.0;
  Eigen::RowVectorXcd row_;
};

// Zero-forcing sum rate as a function of antenna positions with the analog
// combiner held fixed; the implied optimal digital combiner is folded in via
// t_k. Candidates that break the zero-forcing rank condition evaluate to
// -infinity so the search rejects them.
class ZfPinchObjective {
 public:
  ZfPinchObjective(const GeometryConfig& geom, const RadioConfig& radio, const UserLayout& users,
                   CMatrix W_RF, const CMatrix& T1, const PinchPositions& x0)
      : geom_(geom),
        radio_(radio),
        users_(users),
        W_RF_(std::move(W_RF)),
        T1_(T1),
        c_(radio.P / radio.sigma2) {
    row_.resize(users_.K());
    rebase(x0);
  }

  double operator()(const PinchPositions& x) {
    int changed = -1;
    for (int m = 0; m < geom_.M; ++m) {
      if (x[m] != x_base_[m]) {
        if (changed >= 0) {  // more than one coordinate moved
          rebase(x);
          return value_base_;
        }
        changed = m;
      }
    }
    if (changed < 0) return value_base_;
    if (!base_ok_) return direct(changed, x[changed]);

    const int K = users_.K();
    if (changed != cached_m_) {
      cached_m_ = changed;
      a_ = W_RF_.row(changed).conjugate().transpose();  // W_RF^H e_m
      const CVector T1a = T1_ * a_;
      v_ = Hc_base_.adjoint() * T1a;
      s_ = (a_.adjoint() * T1a)(0, 0).real();
      T3v_ = T3_ * v_;
    }

    uplink_channel_row(geom_, radio_, changed, x[changed], users_, row_);
    CVector cvec(K);
    for (int j = 0; j < K; ++j) cvec[j] = std::conj(row_[j] - H_base_(changed, j));
    const CVector T3c = T3_ * cvec;

    // T2' = T2 + [c v] S [c v]^H with S = [[s,1],[1,0]]; Woodbury on T3 = T2^{-1}.
    Eigen::Matrix2cd inner;
    inner(0, 0) = cvec.dot(T3c);
    inner(0, 1) = cvec.dot(T3v_) + 1.0;
    inner(1, 0) = v_.dot(T3c) + 1.0;
    inner(1, 1) = v_.dot(T3v_) - s_;
    const Complex det = inner(0, 0) * inner(1, 1) - inner(0, 1) * inner(1, 0);
    if (!(std::abs(det) > 0.0)) return reject();

    const Complex i00 = inner(1, 1) / det;
    const Complex i01 = -inner(0, 1) / det;
    const Complex i10 = -inner(1, 0) / det;
    const Complex i11 = inner(0, 0) / det;

    double value = 0.0;
    for (int k = 0; k < K; ++k) {
      const Complex p0 = T3c[k];
      const Complex p1 = T3v_[k];
      const Complex corr = p0 * (i00 * std::conj(p0) + i01 * std::conj(p1)) +
                           p1 * (i10 * std::conj(p0) + i11 * std::conj(p1));
      const double t = t_base_[k] - corr.real();
      if (!(t > 0.0) || !std::isfinite(t)) return reject();
      value += std::log2(1.0 + c_ / t);
    }
    return value;
  }

 private:
  static double reject() { return -std::numeric_limits<double>::infinity(); }

  // Full evaluation of one probed coordinate without relying on t_base_/T3_;
  // used while the base point itself violates the rank condition.
  double direct(int m, double pos) {
    const int K = users_.K();
    uplink_channel_row(geom_, radio_, m, pos, users_, row_);
    CMatrix Hc = Hc_base_;
    const CVector a = W_RF_.row(m).conjugate().transpose();
    for (int j = 0; j < K; ++j) Hc.col(j) += a * (row_[j] - H_base_(m, j));
    return value_from(Hc);
  }

  double value_from(const CMatrix& Hc) {
    const CMatrix T2 = Hc.adjoint() * T1_ * Hc;
    const CMatrix T3 = T2.inverse();
    if (!T3.allFinite()) return reject();
    double value = 0.0;
    for (int k = 0; k < users_.K(); ++k) {
      const double t = T3(k, k).real();
      if (!(t > 0.0)) return reject();
      value += std::log2(1.0 + c_ / t);
    }
    return value;
  }

  void rebase(const PinchPositions& x) {
    x_base_ = x;
    cached_m_ = -1;
    H_base_ = uplink_channel(geom_, radio_, x, users_);
    Hc_base_ = W_RF_.adjoint() * H_base_;
    const CMatrix T2 = Hc_base_.adjoint() * T1_ * Hc_base_;
    T3_ = T2.inverse();
    const int K = users_.K();
    t_base_.resize(K);
    base_ok_ = T3_.allFinite();
    value_base_ = 0.0;
    for (int k = 0; k < K && base_ok_; ++k) {
      t_base_[k] = T3_(k, k).real();
      if (!(t_base_[k] > 0.0)) base_ok_ = false;
    }
    if (!base_ok_) {
      value_base_ = reject();
      return;
    }
    for (int k = 0; k < K; ++k) value_base_ += std::log2(1.0 + c_ / t_base_[k]);
  }

  const GeometryConfig& geom_;
  const RadioConfig& radio_;
  const UserLayout& users_;
  CMatrix W_RF_;   // M x N_RF
  CMatrix T1_;     // (W_RF^H W_RF)^{-1}
  double c_;
  PinchPositions x_base_;
  CMatrix H_base_;   // M x K
  CMatrix Hc_base_;  // N_RF x K
  CMatrix T3_;       // K x K
  RVector t_base_;
  double value_base_ = 0.0;
  bool base_ok_ = false;
  int cached_m_ = -1;
  CVector a_, v_, T3v_;
  double s_ = 0.0;
  Eigen::RowVectorXcd row_;
};

}  // namespace swan::detail
