#include "flatspace/baseline.hpp"

#include <cmath>
#include <string>

#include "flatspace/errors.hpp"
#include "flatspace/massive_geodesics.hpp"
#include "flatspace/numerics.hpp"
#include "flatspace/photon_propagation.hpp"
#include "flatspace/units.hpp"

namespace flatspace {

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::precession: return "precession";
    case Quantity::deflection: return "deflection";
    case Quantity::delay: return "delay";
  }
  return "unknown";
}

Quantity quantity_from_string(std::string_view name) {
  if (name == "precession") return Quantity::precession;
  if (name == "deflection") return Quantity::deflection;
  if (name == "delay") return Quantity::delay;
  fail(ErrorKind::UnsupportedQuantity, "unsupported quantity '" + std::string(name) + "'");
}

namespace {

struct Turning {
  double r_min, r_max;
};

Turning turning_of(const Scenario& s) {
  if (s.semi_major_axis > 0.0)
    return {s.semi_major_axis * (1.0 - s.eccentricity), s.semi_major_axis * (1.0 + s.eccentricity)};
  return {s.r_min, s.r_max};
}

double numeric_precession(Model model, const Scenario& s) {
  const Turning tp = turning_of(s);
  const OrbitSetup o = orbit_from_turning_points(model, s.r_o, tp.r_min, tp.r_max);
  const Trajectory tr = integrate_orbit(model, s.r_o, o.state, o.integrals, std::max(s.n_orbits, 1), s.tol);
  return precession_numeric(tr).per_orbit_rad;
}

// Total bending for closest approach 1/u0:
// 2 int_0^u0 du / sqrt(u0^2 - u^2 - 2 r_o (u0^3 - u^3)) - pi, with u = u0 (1 - t^2).
double schwarzschild_bending(double r_o, double R) {
  const double u0 = 1.0 / R;
  auto f = [&](double t) {
    const double u = u0 * (1.0 - t * t);
    const double d = 2.0 * r_o * (u0 * u0 + u0 * u + u * u);
    const double g_flat = u0 + u;
    const double sg = std::sqrt(g_flat - d), sf = std::sqrt(g_flat);
    return 2.0 * std::sqrt(u0) * d / (sg * sf * (sg + sf));
  };
  return 2.0 * numerics::integrate(f, 0.0, 1.0, 1e-13);
}

// Round-trip excess light time along the straight isotropic-coordinate path,
// index n = (1 + r_o/2r)^3 / (1 - r_o/2r).
double schwarzschild_delay(double r_o, double R, double r_es, double r_ms) {
  auto f = [&](double th) {
    const double c = std::cos(th);
    const double r = R / c;
    const double q = r_o / (2.0 * r);
    const double n_minus_1 = q * (4.0 + q * (3.0 + q)) / (1.0 - q);
    return n_minus_1 * R / (c * c);
  };
  const double th_e = std::atan2(std::sqrt(r_es * r_es - R * R), R);
  const double th_m = std::atan2(std::sqrt(r_ms * r_ms - R * R), R);
  return 2.0 * (numerics::integrate(f, -th_e, 0.0, 1e-12) + numerics::integrate(f, 0.0, th_m, 1e-12));
}

}  // namespace

double schwarzschild_baseline(Quantity q, const Scenario& s) {
  if (s.r_o == 0.0) return 0.0;
  switch (q) {
    case Quantity::precession:
      return numeric_precession(Model::schwarzschild, s);
    case Quantity::deflection:
      if (!(s.grazing_radius > 3.0 * s.r_o)) fail(ErrorKind::GeometryInvalid, "ray inside the photon sphere");
      return -schwarzschild_bending(s.r_o, s.grazing_radius);
    case Quantity::delay:
      if (!(s.grazing_radius > 0.5 * s.r_o) || s.grazing_radius > std::min(s.r_es, s.r_ms))
        fail(ErrorKind::GeometryInvalid, "invalid echo geometry");
      return schwarzschild_delay(s.r_o, s.grazing_radius, s.r_es, s.r_ms);
  }
  fail(ErrorKind::UnsupportedQuantity, "unsupported quantity");
}

double model_observable(Model model, Quantity q, const Scenario& s) {
  if (model == Model::schwarzschild) return schwarzschild_baseline(q, s);
  if (s.r_o == 0.0) return 0.0;
  if (model == Model::newtonian) {
    switch (q) {
      case Quantity::precession: return numeric_precession(Model::newtonian, s);
      case Quantity::deflection: return -2.0 * s.r_o / s.grazing_radius;
      case Quantity::delay: return 0.0;
    }
  }
  switch (q) {
    case Quantity::precession: {
      const Turning tp = turning_of(s);
      const double a = 0.5 * (tp.r_min + tp.r_max);
      const double e = (tp.r_max - tp.r_min) / (tp.r_max + tp.r_min);
      const RosetteSetup rs = rosette_from_elements(s.r_o, a, e);
      const RosetteTrajectory tr =
          integrate_rosette(s.r_o, rs.L, rs.u, rs.du, std::max(s.n_orbits, 1), s.tol);
      return precession_numeric(tr).per_orbit_rad;
    }
    case Quantity::deflection:
      return deflection_integral(s.r_o, s.grazing_radius).quadrature;
    case Quantity::delay:
      return shapiro_delay({s.r_es, s.r_ms, s.grazing_radius, s.r_o}).quadrature;
  }
  fail(ErrorKind::UnsupportedQuantity, "unsupported quantity");
}

}  // namespace flatspace
