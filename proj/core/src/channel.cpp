#include <swan/channel.hpp>

#include <cmath>
#include <numbers>

#include <swan/errors.hpp>

namespace swan {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

Complex free_space_entry(const RadioConfig& radio, double ax, double az, const Vec3& user) {
  const double dx = ax - user.x;
  const double dy = -user.y;
  const double dz = az - user.z;
  const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (r == 0.0) throw SingularGeometryError("user coincides with an antenna");
  const double mag = std::sqrt(radio.eta) / r;
  return std::polar(mag, -kTwoPi * r / radio.lambda_c);
}

Complex waveguide_entry(const RadioConfig& radio, double delta) {
  const double mag = std::pow(10.0, -radio.kappa * delta / 20.0);
  return std::polar(mag, -kTwoPi * delta / radio.lambda_g);
}

CVector free_space_channel(const GeometryConfig& geom, const RadioConfig& radio,
                           const PinchPositions& x, const Vec3& user) {
  require_feasible(geom, x);
  if (user.z != 0.0) throw std::invalid_argument("free_space_channel: user must have z = 0");
  CVector h(geom.M);
  for (int m = 0; m < geom.M; ++m) h[m] = free_space_entry(radio, x[m], geom.H, user);
  return h;
}

CVector waveguide_response(const GeometryConfig& geom, const RadioConfig& radio,
                           const PinchPositions& x) {
  require_feasible(geom, x);
  CVector g(geom.M);
  for (int m = 0; m < geom.M; ++m) {
    g[m] = waveguide_entry(radio, std::abs(x[m] - geom.feed_x[m]));
  }
  return g;
}

ChannelMatrix uplink_channel(const GeometryConfig& geom, const RadioConfig& radio,
                             const PinchPositions& x, const UserLayout& users) {
  const CVector g = waveguide_response(geom, radio, x);
  ChannelMatrix H(geom.M, users.K());
  for (int k = 0; k < users.K(); ++k) {
    const CVector h = free_space_channel(geom, radio, x, users.positions[k]);
    H.col(k) = h.cwiseProduct(g);
  }
  return H;
}

ChannelMatrix free_space_channel_at(const RadioConfig& radio, const RVector& antenna_x,
                                    double antenna_z, const UserLayout& users) {
  ChannelMatrix H(antenna_x.size(), users.K());
  for (int k = 0; k < users.K(); ++k) {
    for (Eigen::Index m = 0; m < antenna_x.size(); ++m) {
      H(m, k) = free_space_entry(radio, antenna_x[m], antenna_z, users.positions[k]);
    }
  }
  return H;
}

void uplink_channel_row(const GeometryConfig& geom, const RadioConfig& radio, int m, double ax,
                        const UserLayout& users, Eigen::Ref<Eigen::RowVectorXcd> row) {
  const Complex wg = waveguide_entry(radio, std::abs(ax - geom.feed_x[m]));
  for (int k = 0; k < users.K(); ++k) {
    row[k] = free_space_entry(radio, ax, geom.H, users.positions[k]) * wg;
  }
}

}  // namespace swan
