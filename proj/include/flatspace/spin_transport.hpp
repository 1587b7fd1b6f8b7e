#pragma once

#include <vector>

#include "flatspace/massive_geodesics.hpp"
#include "flatspace/metric_core.hpp"
#include "flatspace/vec.hpp"

namespace flatspace {

// Slowly rotating central body, geometric units.
//   k     = G I / c^2 (m^3), I = 2 M R^2 / 5 for the Earth preset
//   omega = angular velocity / c (1/m)
// Gravitomagnetic potential gi = 2 k (omega x r) / r^3.
struct RotatingFieldSpec {
  double r_o = 0.0;
  double k = 0.0;
  Vec3 omega;
};

FourPotential rotating_potential(const RotatingFieldSpec& spec);

// Connection of the rotating field in Cartesian (t, x, y, z), keeping terms up
// to first order in gi. Exact when omega = 0.
Connection rotating_connections(const RotatingFieldSpec& spec, const Vec3& at);

// dS_i/dt of the point spin with covariant spatial components S, carried with
// coordinate velocity v; S_0 = -v . S is implied.
Vec3 spin_rate(const Connection& conn, const Vec3& v, const Vec3& S);

// g^{mu nu} S_mu S_nu with S_0 = -v . S.
double spin_norm(const SpacetimeMetric& metric, const Vec3& v, const Vec3& S);

struct PrecessionRates {
  Vec3 frame_dragging;   // (k/r^3)(3 rhat (omega . rhat) - omega)
  Vec3 geodetic;         // -(v/2 - gi) x grad g0
  Vec3 de_sitter;        // (3/2) r_o (r x v) / r^3
};
// Rates per unit coordinate time (1/m). v is the coordinate velocity dx/dt.
PrecessionRates precession_rates(const RotatingFieldSpec& spec, const Vec3& x, const Vec3& v);

struct SpinState {
  double t = 0.0;
  Vec3 x;
  Vec3 v;
  Vec3 S;
  double S0 = 0.0;
  double norm = 0.0;
};

// Orthonormal pair spanning the orbital plane: x = r (cos phi e1 + sin phi e2).
struct OrbitPlane {
  Vec3 e1{1.0, 0.0, 0.0};
  Vec3 e2{0.0, 1.0, 0.0};
};

struct SpinTransportResult {
  std::vector<SpinState> samples;
  Mat3 deviation{};           // S(t_end) = (I + deviation) S(0)
  Vec3 rotation;              // small-angle rotation vector read off the deviation
  Vec3 predicted_rotation;    // integral of frame_dragging + geodetic over the same path
  Vec3 de_sitter_rotation;    // integral of de_sitter over the same path
  double duration = 0.0;      // coordinate time covered
  double max_norm_drift = 0.0;
};

// Transports S along the flatspace orbit `orbit` (embedded in `plane`) until the
// orbital angle has advanced by `sweep` radians. Throws ToleranceNotMet when the
// norm drifts in a non-rotating field.
SpinTransportResult transport_spin(const Vec3& S_initial, const RotatingFieldSpec& spec,
                                   const OrbitSetup& orbit, const OrbitPlane& plane,
                                   double sweep, double tol = 1e-10);

}  // namespace flatspace
