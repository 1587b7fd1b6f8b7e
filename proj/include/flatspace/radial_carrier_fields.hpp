#pragma once

#include <vector>

#include "flatspace/vec.hpp"

namespace flatspace {

// Nonlocal carrier with energy radius r_o = G E_M; `coupling` is G (1 in geometric units).
struct RadialCarrier {
  double r_o = 0.0;
  double coupling = 1.0;
  Vec3 center;

  double E_M() const { return r_o / coupling; }
};

// eps = E_M r_o / (4 pi r^2 (r + r_o)^2)
double energy_density(const RadialCarrier& c, double r);

struct FieldIntensity {
  double w_r = 0.0;  // -r_o / (r (r + r_o))
  double W = 0.0;    // -ln((r + r_o) / r)
};
FieldIntensity field_intensity(const RadialCarrier& c, double r);

struct DensityResiduals {
  double active = 0.0;            // |(-div w)/(4 pi G) - eps|
  double passive = 0.0;           // |w^2/(4 pi G) - eps|
  double active_passive = 0.0;    // |eps_a - eps_p|
  double fd_divergence = 0.0;     // |div w by central differences - analytic|
  double ricci = 0.0;             // |R/(8 pi G) - (eps_a + eps_p)|, R from the metric
  double eps = 0.0;
};
// Residuals at radius r; finite differences use step h.
DensityResiduals density_identities(const RadialCarrier& c, double r, double h);

// Divergence of w by second-order central differences in r.
double divergence_fd(const RadialCarrier& c, double r, double h);

// Ricci scalar of g00 = (1 + r_o/r)^-2 with flat spatial part, by central
// differences of W = ln sqrt(g00): R = 2 (lap W + |grad W|^2).
double ricci_scalar_fd(double r_o, double r, double h);

struct EnclosedEnergy {
  double analytic = 0.0;
  double quadrature = 0.0;
};
// R may be +infinity.
EnclosedEnergy enclosed_energy(const RadialCarrier& c, double R, double rel_tol = 1e-12);
double enclosed_fraction(double r_o, double R);

struct AttractionCheck {
  double U0 = 0.0;           // -G E_M E_m / r
  double residual = 0.0;     // |1/sqrt(g00) - (1 - U0/E_m)|
};
AttractionCheck attraction_law_check(const RadialCarrier& c, double E_m, double r);

// Flux of f/E_m = -r_o rhat / r^2 through the sphere of radius r, by quadrature.
double gauss_flux(double r_o, double r);

struct ElectricCarrier {
  double e = -1.0;
  double r_e = 7e-58;
  double r_o = 7e-58;
};

struct ElectricProfile {
  double rho = 0.0;   // e r_o / (4 pi r^2 (r + r_o)^2)
  double E_r = 0.0;   // e r_o / (r_e r (r + r_o))
  double D_r = 0.0;   // e / (r (r + r_o))
  double W_e = 0.0;   // (e / r_e) ln((r + r_o) / r)
  double gauss_residual = 0.0;  // |div D - 4 pi rho| / (4 pi |rho|)
};
ElectricProfile electric_profile(const ElectricCarrier& c, double r);

struct ElectricTotals {
  double charge = 0.0;              // integral of rho over space
  double charge_inside_ro = 0.0;
  double self_energy_potential = 0.0;  // integral rho W_e
  double self_energy_field = 0.0;      // integral E D / (4 pi)
  double self_energy_constant = 0.0;   // integral rho (e / r_e)
  double self_energy_closed = 0.0;     // e^2 / r_e
};
// Quadratures run in the scaled coordinate r / r_o.
ElectricTotals electric_totals(const ElectricCarrier& c, double rel_tol = 1e-12);

// The self-potential e/r_e is constant; its gradient vanishes identically.
Vec3 self_force(const ElectricCarrier& c, const Vec3& at);

// sum_i e_i n(|x - R_i|) with n(r) = r_o / (4 pi r^2 (r + r_o)^2).
struct CarrierSource {
  double e = 0.0;
  double r_o = 0.0;
  Vec3 center;
};
double superposed_density(const std::vector<CarrierSource>& sources, const Vec3& x);

}  // namespace flatspace
