#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "flatspace/vec.hpp"

namespace flatspace {

// Normalised four-potential G_mu = U_mu / P_o of a static source, in the
// universal (Cartesian) frame. Components are dimensionless; g0 must stay < 1.
struct PotentialValue {
  double g0 = 0.0;
  Vec3 gi;
};

struct FourPotential {
  std::function<double(const Vec3&)> g0;
  std::function<Vec3(const Vec3&)> gi;
  // Optional gauge function phi; adds grad(phi) to gi. Time independent.
  std::function<double(const Vec3&)> gauge;
  double gauge_step = 1e-6;  // relative finite-difference step for grad(phi)

  PotentialValue at(const Vec3& x) const;
};

// g0 = -r_o / r. Throws NonPositiveRadius at r = 0.
FourPotential central_potential(double r_o);

// Central potential plus the gravitomagnetic part gi = 2 k (omega x r) / r^3,
// where k = G I / c^2 (m^3) and omega is the spin rate divided by c (1/m).
FourPotential rotating_central_potential(double r_o, double k, const Vec3& omega);

// Samples of (g0, gi) on a uniform Cartesian grid, trilinearly interpolated.
struct PotentialGrid {
  Vec3 origin;
  double spacing = 1.0;
  int nx = 0, ny = 0, nz = 0;
  std::vector<double> g0;  // index (i * ny + j) * nz + k
  std::vector<Vec3> gi;
};
FourPotential grid_potential(PotentialGrid grid);

struct PresetParameters {
  double r_o = 0.0;
  double k = 0.0;
  Vec3 omega;
  PotentialGrid grid;
};
// "central", "rotating-central" or "custom-grid". Throws ConfigInvalid otherwise.
FourPotential potential_preset(std::string_view name, const PresetParameters& params);

struct SpacetimeMetric {
  Mat4 tetrad;     // e^(a)_mu, row a
  Mat4 g;          // g_{mu nu}, signature (+,-,-,-)
  Mat4 ginv;       // g^{mu nu}
  Mat3 gamma;      // spatial metric g_i0 g_j0 / g00 - g_ij
};

// Throws PotentialOutOfRange when g0 >= 1.
SpacetimeMetric build_metric(const PotentialValue& value);
SpacetimeMetric build_metric(const FourPotential& potential, const Vec3& at);

// G_mu -> G_mu + d_mu phi. The metric is not invariant under this map.
FourPotential gauge_shift(const FourPotential& potential, std::function<double(const Vec3&)> phi,
                          double step = 1e-6);

// Central differences of the metric built from the potential; static fields.
Connection christoffels(const FourPotential& potential, const Vec3& at, double step = 1e-5);

// Exact connection of the central field in spherical coordinates (t, r, theta, phi).
struct ChristoffelSet {
  double r_tt = 0.0;        // Gamma^r_tt
  double t_tr = 0.0;        // Gamma^t_tr
  double r_rr = 0.0;        // Gamma^r_rr (zero: g_rr = -1)
  double r_thth = 0.0;      // Gamma^r_theta theta
  double r_phph = 0.0;      // Gamma^r_phi phi
  double th_rth = 0.0;      // Gamma^theta_r theta
  double ph_rph = 0.0;      // Gamma^phi_r phi
  double th_phph = 0.0;     // Gamma^theta_phi phi
  double ph_phth = 0.0;     // Gamma^phi_phi theta

  Connection full() const;
};
ChristoffelSet christoffels_central(double r_o, double r, double theta = 1.5707963267948966);

struct ProperTimeRate {
  double rate = 1.0;   // d tau / dt
  int iterations = 0;
};

// Solves X = 1 - (r_o/r)(E/m) sqrt(1 - l^2 / X^2) for X = d tau / dt by fixed
// point, with l = dl/dt the flat-space coordinate speed. Throws InvalidSpeed for l >= 1
// and NoConvergence after 200 iterations.
ProperTimeRate proper_time_rate(double l, double r_o_over_r, double energy_ratio,
                                double tol = 1e-14);

}  // namespace flatspace
