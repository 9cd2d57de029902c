#pragma once

#include <string>
#include <vector>

#include <swan/types.hpp>

namespace swan {

// Segmented waveguide along the x axis at height H over a D_x x D_y service
// area. Segment m (0-based) spans [m*L, (m+1)*L] and carries one pinching
// antenna; the segment's feed point sits at the left endpoint.
struct GeometryConfig {
  double D_x{0.0};        // waveguide extent along x [m]
  double D_y{0.0};        // service-area extent along y [m]
  double H{0.0};          // waveguide height above the user plane [m]
  int M{0};               // segment count
  double L{0.0};          // segment length, always D_x / M [m]
  double delta_min{0.0};  // minimum spacing between antennas [m]
  RVector feed_x;         // feed_x[m] = m * L

  static GeometryConfig make(double D_x, double D_y, double H, int M, double delta_min);
};

struct RadioConfig {
  double f_c{0.0};       // carrier frequency [Hz]
  double lambda_c{0.0};  // free-space wavelength c / f_c [m]
  double n_eff{1.0};     // effective refractive index of the waveguide
  double lambda_g{0.0};  // guided wavelength lambda_c / n_eff [m]
  double kappa{0.0};     // in-waveguide attenuation [dB/m]
  double eta{0.0};       // free-space path-gain constant lambda_c^2 / (16 pi^2)
  double P{0.0};         // per-user transmit power [W]
  double sigma2{0.0};    // noise power [W]

  static RadioConfig make(double f_c, double n_eff, double kappa, double P, double sigma2);
};

// Users live on the ground plane z = 0. Positions with z != 0 are rejected,
// not projected.
struct UserLayout {
  std::vector<Vec3> positions;

  int K() const { return static_cast<int>(positions.size()); }

  static UserLayout make(std::vector<Vec3> positions);
};

// Antenna x coordinate per segment.
using PinchPositions = RVector;

enum class FeasibilityViolation { None, Containment, Spacing };

struct FeasibilityReport {
  bool ok{true};
  FeasibilityViolation violation{FeasibilityViolation::None};
  int index{-1};  // offending segment (0-based)
  int other{-1};  // second segment for spacing violations

  std::string describe() const;
};

// Checks segment containment m*L <= x[m] <= (m+1)*L and pairwise spacing
// |x[m] - x[m']| >= delta_min. Reports the first violated constraint.
FeasibilityReport is_feasible(const GeometryConfig& geom, const PinchPositions& x);

// Throws FeasibilityError with the report text when x is infeasible.
void require_feasible(const GeometryConfig& geom, const PinchPositions& x);

// Canonical initial placement: one antenna at the center of each segment.
PinchPositions segment_midpoints(const GeometryConfig& geom);

}  // namespace swan
