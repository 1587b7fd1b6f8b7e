#pragma once

#include <array>
#include <vector>

#include "flatspace/vec.hpp"

namespace flatspace {

// Light in the central field: dl/dt = g00 = (1 + r_o/r)^-2.
struct CoordinateSpeed {
  double speed = 1.0;     // dl/dt
  double slowness = 1.0;  // 1/n = sqrt(g00)
};
CoordinateSpeed coordinate_speed(double r_o, double r);

struct EchoGeometry {
  double r_es = 0.0;  // Earth-Sun distance
  double r_ms = 0.0;  // Mercury-Sun distance
  double R_s = 0.0;   // closest approach of the straight path
  double r_o = 0.0;
};

// Round-trip excess light time, in light-meters (divide by c for seconds).
struct ShapiroDelay {
  double quadrature = 0.0;
  double closed_form = 0.0;  // 4 r_o ln(4 r_ms r_es / R_s^2)
  double observer = 0.0;     // quadrature scaled by sqrt(g00) at the Earth
};
ShapiroDelay shapiro_delay(const EchoGeometry& geom);

struct Deflection {
  double quadrature = 0.0;
  double closed_form = 0.0;  // -4 r_o / R_s
};
Deflection deflection_integral(double r_o, double R_s);

// K_mu of a wave with frequency omega0 at infinity travelling along `direction`.
struct WaveVector {
  std::array<double, 4> K{};
  double null_residual = 0.0;  // g^{mu nu} K_mu K_nu / K_0^2
};
WaveVector wave_vector(double r_o, double r, const Vec3& direction, double omega0);

// omega(r1) / omega(r2) for a local static observer at each radius.
double redshift_ratio(double r_o, double r1, double r2);

struct RayState {
  double u = 0.0;
  double du = 0.0;
  double phi = 0.0;
  double u0 = 0.0;
};

// Entry state at phi = pi, u = 0, moving inward.
RayState ray_launch(double u0);

// u0 sin(phi) + 2 r_o u0^2 (1 + cos(phi)).
double ray_closed_form(double phi, double u0, double r_o);

struct RaySample {
  double phi = 0.0;
  double u = 0.0;
  double du = 0.0;
  double invariant_residual = 0.0;  // |(1 - 4 r_o u)(u'^2 + u^2) - u0^2| / u0^2
};

struct RayResult {
  std::vector<RaySample> trajectory;
  double deflection = 0.0;  // exit angle
  double max_invariant_residual = 0.0;
};

// Integrates u'' + u = 2 r_o u0^2 with decreasing phi until the ray leaves
// (u returns to zero). Throws RayCaptured once u > 1/(4 r_o).
RayResult fermat_ray_integrate(const RayState& state, double r_o, double tol = 1e-12);

}  // namespace flatspace
