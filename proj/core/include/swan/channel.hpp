#pragma once

#include <swan/geometry.hpp>

namespace swan {

// Complex M x K uplink matrix; column k is the channel of user k.
using ChannelMatrix = CMatrix;

// Free-space response from each antenna to one user:
//   entry m = (sqrt(eta) / r_m) * exp(-j 2 pi r_m / lambda_c)
// with r_m the exact spherical distance from (x[m], 0, H) to the user.
CVector free_space_channel(const GeometryConfig& geom, const RadioConfig& radio,
                           const PinchPositions& x, const Vec3& user);

// In-waveguide response from each antenna back to its segment feed:
//   entry m = 10^(-kappa * delta_m / 20) * exp(-j 2 pi delta_m / lambda_g)
// with delta_m = |feed_x[m] - x[m]|.
CVector waveguide_response(const GeometryConfig& geom, const RadioConfig& radio,
                           const PinchPositions& x);

// Overall uplink channel: column k is the entrywise product of the free-space
// response for user k and the waveguide response.
ChannelMatrix uplink_channel(const GeometryConfig& geom, const RadioConfig& radio,
                             const PinchPositions& x, const UserLayout& users);

// Free-space-only channel for an arbitrary fixed antenna line at height z,
// with no waveguide factor and no segment feasibility. Used by array
// baselines whose elements are not tied to waveguide segments.
ChannelMatrix free_space_channel_at(const RadioConfig& radio, const RVector& antenna_x,
                                    double antenna_z, const UserLayout& users);

// Single free-space entry for an antenna at (ax, 0, az). Throws
// SingularGeometryError when the user coincides with the antenna.
Complex free_space_entry(const RadioConfig& radio, double ax, double az, const Vec3& user);

// Waveguide factor for an in-guide path of length delta >= 0.
Complex waveguide_entry(const RadioConfig& radio, double delta);

// Row m of uplink_channel with the antenna moved to ax. Skips feasibility
// checks; position-search inner loops own that invariant.
void uplink_channel_row(const GeometryConfig& geom, const RadioConfig& radio, int m, double ax,
                        const UserLayout& users, Eigen::Ref<Eigen::RowVectorXcd> row);

}  // namespace swan
