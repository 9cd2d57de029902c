#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <swan/channel.hpp>
#include <swan/errors.hpp>
#include <swan/geometry.hpp>

using namespace swan;

namespace {

// 28 GHz reference constants, high-precision scripted evaluations.
constexpr double kLambdaC = 1.07068735e-2;
constexpr double kLambdaG = 7.64776678571e-3;
constexpr double kEta = 7.25948170554e-7;
constexpr double kFsMag3m = 2.84008640431e-4;    // sqrt(eta)/3
constexpr double kFsRe3m = 9.81495988466e-5;     // at r = 3, f_c = 28 GHz
constexpr double kFsIm3m = -2.66509969955e-4;
constexpr double kWgMag1m = 0.990831944893;      // 10^(-0.08/20)
constexpr double kWgRe1m = 0.0443444234251;
constexpr double kWgIm1m = 0.989839135987;
constexpr double kCombMag = 2.81404833564e-4;    // fs(3 m) * wg(1 m)

RadioConfig radio28(double kappa = 0.08) {
  return RadioConfig::make(28e9, 1.4, kappa, 0.01, 1e-11);
}

}  // namespace

TEST_CASE("geometry derives segment layout") {
  const GeometryConfig g = GeometryConfig::make(80.0, 20.0, 3.0, 50, 0.005);
  CHECK(g.L == doctest::Approx(1.6).epsilon(1e-15));
  REQUIRE(g.feed_x.size() == 50);
  CHECK(g.feed_x[0] == 0.0);
  CHECK(g.feed_x[49] == doctest::Approx(49 * 1.6).epsilon(1e-15));
  const PinchPositions mid = segment_midpoints(g);
  CHECK(mid[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(mid[49] == doctest::Approx(79.2).epsilon(1e-15));

  CHECK_THROWS_AS(GeometryConfig::make(0.0, 20.0, 3.0, 50, 0.005), std::invalid_argument);
  CHECK_THROWS_AS(GeometryConfig::make(80.0, 20.0, 0.0, 50, 0.005), std::invalid_argument);
  CHECK_THROWS_AS(GeometryConfig::make(80.0, 20.0, 3.0, 0, 0.005), std::invalid_argument);
  CHECK_THROWS_AS(GeometryConfig::make(80.0, 20.0, 3.0, 50, 0.0), std::invalid_argument);
}

TEST_CASE("radio derives wavelengths and path-gain constant") {
  const RadioConfig r = radio28();
  CHECK(r.lambda_c == doctest::Approx(kLambdaC).epsilon(1e-12));
  CHECK(r.lambda_g == doctest::Approx(kLambdaG).epsilon(1e-12));
  CHECK(r.eta == doctest::Approx(kEta).epsilon(1e-12));
  // Derived-constant identities.
  CHECK(r.lambda_g * r.n_eff == doctest::Approx(r.lambda_c).epsilon(1e-12));
  CHECK(16.0 * std::numbers::pi * std::numbers::pi * r.eta ==
        doctest::Approx(r.lambda_c * r.lambda_c).epsilon(1e-12));

  CHECK_THROWS_AS(RadioConfig::make(0.0, 1.4, 0.08, 0.01, 1e-11), std::invalid_argument);
  CHECK_THROWS_AS(RadioConfig::make(28e9, 0.9, 0.08, 0.01, 1e-11), std::invalid_argument);
  CHECK_THROWS_AS(RadioConfig::make(28e9, 1.4, -0.1, 0.01, 1e-11), std::invalid_argument);
  CHECK_THROWS_AS(RadioConfig::make(28e9, 1.4, 0.08, 0.0, 1e-11), std::invalid_argument);
  CHECK_THROWS_AS(RadioConfig::make(28e9, 1.4, 0.08, 0.01, 0.0), std::invalid_argument);
}

TEST_CASE("users live on the ground plane") {
  CHECK_THROWS_AS(UserLayout::make({{1.0, 2.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(UserLayout::make({}), std::invalid_argument);
  CHECK(UserLayout::make({{1.0, 2.0, 0.0}}).K() == 1);
}

TEST_CASE("free-space response matches the 28 GHz reference entry") {
  // Antenna directly above the user at height 3.
  const GeometryConfig g = GeometryConfig::make(1.0, 1.0, 3.0, 1, 0.005);
  const RadioConfig r = radio28();
  PinchPositions x(1);
  x[0] = 0.0;

  const CVector v = free_space_channel(g, r, x, Vec3{0.0, 0.0, 0.0});
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v[0]) == doctest::Approx(kFsMag3m).epsilon(1e-11));
  CHECK(v[0].real() == doctest::Approx(kFsRe3m).epsilon(1e-9));
  CHECK(v[0].imag() == doctest::Approx(kFsIm3m).epsilon(1e-9));

  SUBCASE("kappa never enters the free-space part") {
    const CVector v0 = free_space_channel(g, radio28(0.0), x, Vec3{0.0, 0.0, 0.0});
    CHECK(v0[0] == v[0]);
  }
  SUBCASE("mirror-symmetric users see identical magnitudes") {
    const GeometryConfig g2 = GeometryConfig::make(10.0, 5.0, 3.0, 1, 0.005);
    PinchPositions xc(1);
    xc[0] = 5.0;
    const CVector a = free_space_channel(g2, r, xc, Vec3{4.0, 1.0, 0.0});
    const CVector b = free_space_channel(g2, r, xc, Vec3{6.0, 1.0, 0.0});
    CHECK(std::abs(a[0]) == doctest::Approx(std::abs(b[0])).epsilon(1e-14));
  }
  SUBCASE("magnitude decays with user distance") {
    double prev = 1.0;
    for (double uy : {0.0, 2.0, 5.0, 11.0}) {
      const double mag = std::abs(free_space_channel(g, r, x, Vec3{0.0, uy, 0.0})[0]);
      CHECK(mag < prev);
      prev = mag;
    }
  }
}

TEST_CASE("coincident antenna and user is a singular geometry") {
  const RadioConfig r = radio28();
  CHECK_THROWS_AS((void)free_space_entry(r, 0.0, 0.0, Vec3{0.0, 0.0, 0.0}),
                  SingularGeometryError);
}

TEST_CASE("waveguide response follows the attenuation/phase law") {
  const RadioConfig r = radio28();
  SUBCASE("antenna at the feed point gives exactly one") {
    CHECK(waveguide_entry(r, 0.0) == Complex(1.0, 0.0));
  }
  SUBCASE("one meter of guide at 0.08 dB/m") {
    const Complex w = waveguide_entry(r, 1.0);
    CHECK(std::abs(w) == doctest::Approx(kWgMag1m).epsilon(1e-11));
    CHECK(w.real() == doctest::Approx(kWgRe1m).epsilon(1e-9));
    CHECK(w.imag() == doctest::Approx(kWgIm1m).epsilon(1e-9));
  }
  SUBCASE("lossless guide keeps unit magnitude") {
    const RadioConfig r0 = radio28(0.0);
    for (double d : {0.3, 1.7, 42.0}) {
      CHECK(std::abs(waveguide_entry(r0, d)) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("vector form measures from each feed") {
    const GeometryConfig g = GeometryConfig::make(4.0, 1.0, 3.0, 2, 0.005);
    PinchPositions x(2);
    x[0] = 0.0;  // at its feed
    x[1] = 3.0;  // 1 m past feed_x[1] = 2
    const CVector w = waveguide_response(g, r, x);
    CHECK(w[0] == Complex(1.0, 0.0));
    CHECK(std::abs(w[1]) == doctest::Approx(kWgMag1m).epsilon(1e-11));
  }
}

TEST_CASE("uplink channel is the entry-wise product of its factors") {
  const RadioConfig r = radio28();
  // Antenna 1 m into a single 2 m segment, user straight below: r = 3, delta = 1.
  const GeometryConfig g = GeometryConfig::make(2.0, 1.0, 3.0, 1, 0.005);
  PinchPositions x(1);
  x[0] = 1.0;
  const UserLayout users = UserLayout::make({{1.0, 0.0, 0.0}});

  const ChannelMatrix H = uplink_channel(g, r, x, users);
  REQUIRE(H.rows() == 1);
  REQUIRE(H.cols() == 1);
  CHECK(std::abs(H(0, 0)) == doctest::Approx(kCombMag).epsilon(1e-11));
  const Complex expect =
      free_space_channel(g, r, x, users.positions[0])[0] * waveguide_response(g, r, x)[0];
  CHECK(H(0, 0) == expect);

  SUBCASE("zero loss and zero guide length reduce to free space") {
    const RadioConfig r0 = radio28(0.0);
    PinchPositions feed(1);
    feed[0] = 0.0;
    const ChannelMatrix Hf = uplink_channel(g, r0, feed, users);
    CHECK(Hf(0, 0) == free_space_channel(g, r0, feed, users.positions[0])[0]);
  }
  SUBCASE("user permutation permutes columns") {
    const GeometryConfig g4 = GeometryConfig::make(8.0, 4.0, 3.0, 4, 0.005);
    const PinchPositions mid = segment_midpoints(g4);
    const UserLayout u1 = UserLayout::make({{1.0, 1.0, 0.0}, {6.0, 3.0, 0.0}});
    const UserLayout u2 = UserLayout::make({{6.0, 3.0, 0.0}, {1.0, 1.0, 0.0}});
    const ChannelMatrix H1 = uplink_channel(g4, r, mid, u1);
    const ChannelMatrix H2 = uplink_channel(g4, r, mid, u2);
    CHECK((H1.col(0) - H2.col(1)).norm() == 0.0);
    CHECK((H1.col(1) - H2.col(0)).norm() == 0.0);
  }
  SUBCASE("infeasible positions are rejected") {
    PinchPositions bad(1);
    bad[0] = 2.5;
    CHECK_THROWS_AS((void)uplink_channel(g, r, bad, users), FeasibilityError);
  }
}

TEST_CASE("hot-path row synthesis matches the full channel") {
  const RadioConfig r = radio28();
  const GeometryConfig g = GeometryConfig::make(8.0, 4.0, 3.0, 4, 0.005);
  const UserLayout users = UserLayout::make({{1.0, 1.0, 0.0}, {6.0, 3.0, 0.0}});
  PinchPositions x = segment_midpoints(g);
  x[2] = 4.25;
  const ChannelMatrix H = uplink_channel(g, r, x, users);
  Eigen::RowVectorXcd row(2);
  uplink_channel_row(g, r, 2, 4.25, users, row);
  CHECK((row - H.row(2)).norm() == 0.0);
}

TEST_CASE("feasibility reports the first violated constraint") {
  const GeometryConfig g = GeometryConfig::make(2.0, 1.0, 3.0, 2, 0.005);
  PinchPositions x(2);

  x << 0.5, 1.5;
  CHECK(is_feasible(g, x).ok);

  x << 0.999, 1.000;
  const FeasibilityReport spacing = is_feasible(g, x);
  CHECK_FALSE(spacing.ok);
  CHECK(spacing.violation == FeasibilityViolation::Spacing);
  CHECK(spacing.index == 0);
  CHECK(spacing.other == 1);

  x << 1.2, 1.5;
  const FeasibilityReport contain = is_feasible(g, x);
  CHECK_FALSE(contain.ok);
  CHECK(contain.violation == FeasibilityViolation::Containment);
  CHECK(contain.index == 0);

  CHECK_THROWS_AS(require_feasible(g, x), FeasibilityError);
  CHECK_NOTHROW(require_feasible(g, segment_midpoints(g)));
}
