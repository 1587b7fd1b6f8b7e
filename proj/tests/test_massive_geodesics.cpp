#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flatspace/errors.hpp"
#include "flatspace/massive_geodesics.hpp"

using namespace flatspace;

namespace {

constexpr double r_sun = 1476.6;
constexpr double a_mercury = 5.79e10;
constexpr double e_mercury = 0.2056;

double weak_field(double r_o, double a, double e) { return 6.0 * std::numbers::pi * r_o / (a * (1.0 - e * e)); }

}  // namespace

TEST_CASE("turning points are roots of the radial function") {
  for (Model m : {Model::flatspace_weber, Model::schwarzschild, Model::newtonian}) {
    CAPTURE(to_string(m));
    for (double x : {20.0, 1e3, 1e7}) {
      const double r_min = x * r_sun, r_max = 3.0 * x * r_sun;
      const OrbitSetup o = orbit_from_turning_points(m, r_sun, r_min, r_max);
      const RadialMotion rm(m, r_sun, o.integrals);
      const double scale = std::abs(o.integrals.energy_excess);
      CHECK(std::abs(rm.Phi(r_min)) / scale < 1e-12);
      CHECK(std::abs(rm.Phi(r_max)) / scale < 1e-12);
      CHECK(rm.Phi(2.0 * x * r_sun) > 0.0);
      const auto tp = turning_points(m, r_sun, o.integrals);
      REQUIRE(tp.has_value());
      CHECK(tp->r_min == doctest::Approx(r_min).epsilon(1e-10));
      CHECK(tp->r_max == doctest::Approx(r_max).epsilon(1e-10));
    }
  }
}

TEST_CASE("elements and turning points describe the same flatspace orbit") {
  const OrbitSetup a = orbit_from_elements(r_sun, a_mercury, e_mercury);
  const OrbitSetup b =
      orbit_from_turning_points(Model::flatspace_weber, r_sun, a_mercury * (1 - e_mercury), a_mercury * (1 + e_mercury));
  CHECK(a.integrals.J_phi == doctest::Approx(b.integrals.J_phi).epsilon(1e-6));
  CHECK(a.integrals.energy_excess == doctest::Approx(b.integrals.energy_excess).epsilon(1e-6));
}

TEST_CASE("first integral holds over 100 orbits") {
  const OrbitSetup o = orbit_from_elements(r_sun, a_mercury, e_mercury);
  const Trajectory tr = integrate_orbit(Model::flatspace_weber, r_sun, o.state, o.integrals, 100, 1e-10);
  CHECK(tr.max_residual < 1e-9);
  CHECK(tr.max_drift / 100.0 < 1e-9);
  for (const auto& s : tr.samples) {
    CHECK(s.state.r >= a_mercury * (1 - e_mercury) * (1 - 1e-9));
    CHECK(s.state.r <= a_mercury * (1 + e_mercury) * (1 + 1e-9));
  }
}

TEST_CASE("time reversal returns to the start") {
  const OrbitSetup o = orbit_from_elements(r_sun, a_mercury, e_mercury);
  const double period_p = 2.0 * std::numbers::pi * a_mercury * std::sqrt(a_mercury / r_sun);
  const Trajectory fwd =
      integrate_orbit_span(Model::flatspace_weber, r_sun, o.state, o.integrals, 2.3 * period_p, 1e-12);
  GeodesicState end = fwd.samples.back().state;
  const Trajectory back =
      integrate_orbit_span(Model::flatspace_weber, r_sun, end, o.integrals, -2.3 * period_p, 1e-12);
  const GeodesicState s = back.samples.back().state;
  CHECK(std::abs(s.r - o.state.r) / o.state.r < 1e-9);
  CHECK(std::abs(s.phi - o.state.phi) < 1e-8);
  CHECK(std::abs(s.t - o.state.t) / (2.3 * period_p) < 1e-9);
}

TEST_CASE("circular orbit keeps its radius") {
  const double r = 1e4 * r_sun;
  const OrbitSetup o = circular_orbit(r_sun, r);
  const double period_p = 2.0 * std::numbers::pi / o.state.dphidp;
  const Trajectory tr = integrate_orbit_span(Model::flatspace_weber, r_sun, o.state, o.integrals, 5 * period_p, 1e-12);
  for (const auto& s : tr.samples) CHECK(std::abs(s.state.r - r) / r < 1e-10);
}

TEST_CASE("rosette precession matches the weak-field formula") {
  const RosetteSetup rs = rosette_from_elements(r_sun, a_mercury, e_mercury);
  const PrecessionResult p = precession_numeric(integrate_rosette(r_sun, rs.L, rs.u, rs.du, 10, 1e-10));
  CHECK(p.orbits == 10);
  CHECK(p.per_orbit_rad == doctest::Approx(weak_field(r_sun, a_mercury, e_mercury)).epsilon(5e-3));
}

TEST_CASE("rosette precession at high eccentricity") {
  const double a = 1e7 * r_sun, e = 0.9;
  const RosetteSetup rs = rosette_from_elements(r_sun, a, e);
  const PrecessionResult p = precession_numeric(integrate_rosette(r_sun, rs.L, rs.u, rs.du, 10, 1e-11));
  CHECK(p.per_orbit_rad == doctest::Approx(weak_field(r_sun, a, e)).epsilon(1e-2));
}

TEST_CASE("rosette precession scales linearly with r_o in the weak field") {
  auto run = [](double r_o) {
    const RosetteSetup rs = rosette_from_elements(r_o, 1e9, 0.3);
    return precession_numeric(integrate_rosette(r_o, rs.L, rs.u, rs.du, 5, 1e-12)).per_orbit_rad;
  };
  const double p1 = run(100.0), p2 = run(200.0);
  CHECK(p2 / p1 == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("newtonian ellipse closes") {
  const OrbitSetup o = orbit_from_turning_points(Model::newtonian, r_sun, 4.6e10, 6.98e10);
  const PrecessionResult p =
      precession_numeric(integrate_orbit(Model::newtonian, r_sun, o.state, o.integrals, 10, 1e-12));
  CHECK(std::abs(p.per_orbit_rad) < 1e-10);
}

TEST_CASE("schwarzschild precession: numeric, quadrature and weak field") {
  const double r_min = a_mercury * (1 - e_mercury), r_max = a_mercury * (1 + e_mercury);
  const OrbitSetup o = orbit_from_turning_points(Model::schwarzschild, r_sun, r_min, r_max);
  const double num =
      precession_numeric(integrate_orbit(Model::schwarzschild, r_sun, o.state, o.integrals, 10, 1e-12)).per_orbit_rad;
  const double quad = precession_quadrature(Model::schwarzschild, r_sun, o.integrals);
  CHECK(num == doctest::Approx(quad).epsilon(1e-3));
  CHECK(quad == doctest::Approx(weak_field(r_sun, a_mercury, e_mercury)).epsilon(1e-6));
}

TEST_CASE("geodesic first-integral system precession") {
  const OrbitSetup o = orbit_from_elements(r_sun, a_mercury, e_mercury);
  const double exact = precession_geodesic_exact(r_sun, o.integrals.J_phi);
  const double J = o.integrals.J_phi;
  CHECK(exact == doctest::Approx(std::numbers::pi * r_sun * r_sun / (J * J)).epsilon(1e-6));
  CHECK(precession_quadrature(Model::flatspace_weber, r_sun, o.integrals) == doctest::Approx(exact).epsilon(1e-8));
  const double num = precession_numeric(
                         integrate_orbit(Model::flatspace_weber, r_sun, o.state, o.integrals, 10, 1e-12))
                         .per_orbit_rad;
  CHECK(num == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("century conversion") {
  PrecessionResult p;
  p.per_orbit_rad = weak_field(r_sun, a_mercury, e_mercury);
  const double T = kepler_period_seconds(r_sun, a_mercury);
  CHECK(T / 86400.0 == doctest::Approx(87.97).epsilon(3e-3));
  CHECK(with_century_rate(p, T).arcsec_per_century == doctest::Approx(42.98).epsilon(2e-3));
}

TEST_CASE("free fall is independent of the test energy") {
  const Vec3 x{3e10, -1e10, 2e9}, v{1e-5, 3e-5, -2e-6};
  const Vec3 a1 = geodesic_force(r_sun, 1.0, x, v).acceleration;
  const Vec3 a2 = geodesic_force(r_sun, 5.97e24, x, v).acceleration;
  CHECK(a1.x == a2.x);
  CHECK(a1.y == a2.y);
  CHECK(a1.z == a2.z);
  const GeodesicForce f = geodesic_force(r_sun, 2.0, x, v);
  const double r = norm(x);
  const Vec3 g = (-r_sun / (r * r * r)) * x;
  CHECK(norm(f.force - 2.0 * g) <= 1e-15 * norm(f.force));
  CHECK(norm(f.acceleration - (g - dot(v, g) * v)) <= 1e-15 * norm(g));
}

TEST_CASE("orbit errors") {
  CHECK_THROWS_AS(orbit_from_elements(r_sun, a_mercury, 1.0), Error);
  CHECK_THROWS_AS(orbit_from_elements(0.0, a_mercury, 0.2), Error);
  CHECK_THROWS_AS(orbit_from_turning_points(Model::flatspace_weber, r_sun, 2e10, 1e10), Error);
  CHECK_THROWS_AS(orbit_from_turning_points(Model::schwarzschild, r_sun, 3.0 * r_sun, 4.0 * r_sun), Error);
  const OrbitSetup o = orbit_from_elements(r_sun, a_mercury, e_mercury);
  GeodesicState bad = o.state;
  bad.r *= 0.5;
  CHECK_THROWS_AS(integrate_orbit(Model::flatspace_weber, r_sun, bad, o.integrals, 2, 1e-10), Error);
  CHECK_THROWS_AS(rosette_rhs(1.0 / (3.0 * r_sun), 0.0, r_sun, 1.0), Error);
  try {
    integrate_orbit(Model::flatspace_weber, r_sun, o.state, o.integrals, 0, 1e-10);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
  }
}
