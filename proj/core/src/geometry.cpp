#include <swan/geometry.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <swan/errors.hpp>

namespace swan {

GeometryConfig GeometryConfig::make(double D_x, double D_y, double H, int M, double delta_min) {
  if (!(D_x > 0.0)) throw std::invalid_argument("GeometryConfig: D_x must be positive");
  if (D_y < 0.0) throw std::invalid_argument("GeometryConfig: D_y must be nonnegative");
  if (!(H > 0.0)) throw std::invalid_argument("GeometryConfig: H must be positive");
  if (M < 1) throw std::invalid_argument("GeometryConfig: M must be at least 1");
  if (!(delta_min > 0.0)) throw std::invalid_argument("GeometryConfig: delta_min must be positive");

  GeometryConfig g;
  g.D_x = D_x;
  g.D_y = D_y;
  g.H = H;
  g.M = M;
  g.L = D_x / M;
  g.delta_min = delta_min;
  g.feed_x.resize(M);
  for (int m = 0; m < M; ++m) g.feed_x[m] = m * g.L;
  return g;
}

RadioConfig RadioConfig::make(double f_c, double n_eff, double kappa, double P, double sigma2) {
  if (!(f_c > 0.0)) throw std::invalid_argument("RadioConfig: f_c must be positive");
  if (!(n_eff >= 1.0)) throw std::invalid_argument("RadioConfig: n_eff must be at least 1");
  if (kappa < 0.0) throw std::invalid_argument("RadioConfig: kappa must be nonnegative");
  if (!(P > 0.0)) throw std::invalid_argument("RadioConfig: P must be positive");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("RadioConfig: sigma2 must be positive");

  RadioConfig r;
  r.f_c = f_c;
  r.lambda_c = kSpeedOfLight / f_c;
  r.n_eff = n_eff;
  r.lambda_g = r.lambda_c / n_eff;
  r.kappa = kappa;
  r.eta = r.lambda_c * r.lambda_c / (16.0 * std::numbers::pi * std::numbers::pi);
  r.P = P;
  r.sigma2 = sigma2;
  return r;
}

UserLayout UserLayout::make(std::vector<Vec3> positions) {
  if (positions.empty()) throw std::invalid_argument("UserLayout: at least one user required");
  for (const Vec3& p : positions) {
    if (p.z != 0.0) throw std::invalid_argument("UserLayout: users must lie on the z = 0 plane");
  }
  return UserLayout{std::move(positions)};
}

std::string FeasibilityReport::describe() const {
  if (ok) return "feasible";
  std::ostringstream os;
  switch (violation) {
    case FeasibilityViolation::Containment:
      os << "antenna " << index << " outside its segment";
      break;
    case FeasibilityViolation::Spacing:
      os << "antennas " << index << " and " << other << " closer than delta_min";
      break;
    case FeasibilityViolation::None:
      break;
  }
  return os.str();
}

FeasibilityReport is_feasible(const GeometryConfig& geom, const PinchPositions& x) {
  FeasibilityReport rep;
  if (x.size() != geom.M) {
    throw std::invalid_argument("is_feasible: position count does not match segment count");
  }
  for (int m = 0; m < geom.M; ++m) {
    const double lo = geom.feed_x[m];
    const double hi = geom.feed_x[m] + geom.L;
    if (!(x[m] >= lo && x[m] <= hi)) {
      rep.ok = false;
      rep.violation = FeasibilityViolation::Containment;
      rep.index = m;
      return rep;
    }
  }
  // Containment orders the antennas, so only neighbors can violate spacing.
  for (int m = 0; m + 1 < geom.M; ++m) {
    if (std::abs(x[m + 1] - x[m]) < geom.delta_min) {
      rep.ok = false;
      rep.violation = FeasibilityViolation::Spacing;
      rep.index = m;
      rep.other = m + 1;
      return rep;
    }
  }
  return rep;
}

void require_feasible(const GeometryConfig& geom, const PinchPositions& x) {
  const FeasibilityReport rep = is_feasible(geom, x);
  if (!rep.ok) throw FeasibilityError("infeasible antenna positions: " + rep.describe());
}

PinchPositions segment_midpoints(const GeometryConfig& geom) {
  PinchPositions x(geom.M);
  for (int m = 0; m < geom.M; ++m) x[m] = (m + 0.5) * geom.L;
  return x;
}

}  // namespace swan
