#pragma once

#include <complex>

#include <Eigen/Dense>

namespace swan {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};
};

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// dBm appears only at the configuration boundary; everything else is watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace swan
