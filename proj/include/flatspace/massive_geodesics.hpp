#pragma once

#include <optional>
#include <vector>

#include "flatspace/model.hpp"
#include "flatspace/vec.hpp"

namespace flatspace {

// Constants of motion of a planar orbit in a central field of radius r_o.
//   energy_ratio  E/m
//   L             specific angular momentum of the weak-field orbit, L^2 = r_o a (1 - e^2)
//   J_phi         angular-momentum integral used by the model's equations
//   energy_excess model-specific: 1 - m^2/E^2 (flatspace), E^2 - 1 (Schwarzschild),
//                 2 x specific energy (Newtonian). Kept separately to avoid cancellation.
struct OrbitIntegrals {
  double energy_ratio = 1.0;
  double L = 0.0;
  double J_phi = 0.0;
  double energy_excess = 0.0;
};

// p is the model's orbit parameter: the flat-space parameter of the geodesic
// system, affine parameter (Schwarzschild) or coordinate time (Newtonian).
struct GeodesicState {
  double p = 0.0;
  double t = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double drdp = 0.0;
  double dphidp = 0.0;
};

struct TrajectorySample {
  GeodesicState state;
  double residual = 0.0;        // first-integral residual relative to its largest term
  double drift = 0.0;           // same residual relative to the kinetic terms
};

struct Trajectory {
  Model model = Model::flatspace_weber;
  double r_o = 0.0;
  OrbitIntegrals integrals;
  double tol = 1e-10;
  std::vector<TrajectorySample> samples;
  double max_residual = 0.0;
  double max_drift = 0.0;
};

struct OrbitSetup {
  GeodesicState state;
  OrbitIntegrals integrals;
};

struct TurningPoints {
  double r_min = 0.0;
  double r_max = 0.0;
};

// Radial equation (dr/dp)^2 = Phi(r) of each model, with the matching clocks.
class RadialMotion {
 public:
  RadialMotion(Model model, double r_o, const OrbitIntegrals& integrals);

  double Phi(double r) const;
  double half_dPhi(double r) const;  // d^2 r / dp^2
  double dtdp(double r) const;
  double dphidp(double r) const;
  // |(dr/dp)^2 - Phi(r)| relative to the largest term of the model's
  // energy equation: (1 + r_o/r)^2, E^2, or the kinetic terms (Newtonian).
  double residual(double r, double drdp) const;
  // |(dr/dp)^2 - Phi(r)| relative to the kinetic and potential terms only.
  double drift(double r, double drdp) const;

  Model model() const { return model_; }
  double r_o() const { return r_o_; }
  const OrbitIntegrals& integrals() const { return ints_; }

 private:
  Model model_;
  double r_o_;
  OrbitIntegrals ints_;
};

// Perihelion start of the flatspace orbit with semi-major axis a and eccentricity e.
OrbitSetup orbit_from_elements(double r_o, double a, double ecc);

// Perihelion start of a bound orbit with prescribed turning points in any model.
OrbitSetup orbit_from_turning_points(Model model, double r_o, double r_min, double r_max);

// Circular flatspace orbit of radius r.
OrbitSetup circular_orbit(double r_o, double r);

// Both roots of Phi bracketing a bound orbit; empty when none exist.
std::optional<TurningPoints> turning_points(Model model, double r_o, const OrbitIntegrals& integrals);

// Integrates until the n-th radial minimum after the start, which is refined
// and appended as the last sample. Throws UnboundOrbit, TurningPointNotFound,
// and ToleranceNotMet when the drift exceeds 10 tol per orbit.
Trajectory integrate_orbit(Model model, double r_o, const GeodesicState& start,
                           const OrbitIntegrals& integrals, int n_orbits, double tol = 1e-10);

// Integrates over a fixed parameter span dp (negative for backward).
Trajectory integrate_orbit_span(Model model, double r_o, const GeodesicState& start,
                                const OrbitIntegrals& integrals, double dp, double tol = 1e-10);

struct PrecessionResult {
  double per_orbit_rad = 0.0;
  double arcsec_per_century = 0.0;  // filled by with_century_rate
  int orbits = 0;
  std::vector<double> perihelion_phi;
};

// Perihelion advance from successive radial minima, each located to 1e-12 rad.
// Throws InsufficientOrbits when fewer than two minima are present.
PrecessionResult precession_numeric(const Trajectory& trajectory);

// Kepler period for the Sun-like source: T = 2 pi sqrt(a^3 / r_o) / c in seconds.
double kepler_period_seconds(double r_o, double a);
PrecessionResult with_century_rate(PrecessionResult result, double period_seconds);

// 6 pi r_o / (a (1 - e^2)).
double precession_analytic(double r_o, double a, double ecc);

// Closed form for the flatspace geodesic system, whose orbit equation
// u'' + u = (r_o / J^2)(1 + r_o u) is linear: 2 pi (1/sqrt(1 - r_o^2/J^2) - 1).
double precession_geodesic_exact(double r_o, double J_phi);

// 2 * integral of (dphi/dp)/sqrt(Phi) between turning points, minus 2 pi.
double precession_quadrature(Model model, double r_o, const OrbitIntegrals& integrals);

// Weak-field rosette equation in u = 1/r with phi as the independent variable:
// u'' = (r_o/L^2 - u + 4.5 r_o u^2 + 1.5 r_o u'^2) / (1 - 3 r_o u).
struct RosetteSample {
  double phi = 0.0;
  double u = 0.0;
  double du = 0.0;
};

struct RosetteTrajectory {
  double r_o = 0.0;
  double L = 0.0;
  double tol = 1e-10;
  std::vector<RosetteSample> samples;
};

// Throws DenominatorVanishes when 3 r_o u >= 1.
double rosette_rhs(double u, double du, double r_o, double L);

struct RosetteSetup {
  double L = 0.0;
  double u = 0.0;
  double du = 0.0;
};
RosetteSetup rosette_from_elements(double r_o, double a, double ecc);

RosetteTrajectory integrate_rosette(double r_o, double L, double u0, double du0, int n_orbits,
                                    double tol = 1e-10);
PrecessionResult precession_numeric(const RosetteTrajectory& trajectory);

// Free-fall force on a body of passive energy E_m moving with coordinate
// velocity v at x: F = E_m g, a = g - v (v . g), with g = -r_o x / r^3.
struct GeodesicForce {
  Vec3 force;
  Vec3 acceleration;
};
GeodesicForce geodesic_force(double r_o, double E_m, const Vec3& x, const Vec3& v);

}  // namespace flatspace
