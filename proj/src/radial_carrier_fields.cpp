#include "flatspace/radial_carrier_fields.hpp"

#include <cmath>

#include "flatspace/errors.hpp"
#include "flatspace/massive_geodesics.hpp"
#include "flatspace/metric_core.hpp"
#include "flatspace/numerics.hpp"
#include "flatspace/units.hpp"

namespace flatspace {

namespace {

constexpr double four_pi = 4.0 * units::pi;

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::NonPositiveRadius, "r must be positive");
}

// Integral of dx / (1 + x)^2 over [0, X], split at 1e3 and 1e6 with the
// remainder beyond 1e6 added in closed form.
double profile_integral(double X, double rel_tol) {
  auto f = [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); };
  const double s1 = 1e3, s2 = 1e6;
  double total = numerics::integrate(f, 0.0, std::min(X, s1), rel_tol);
  if (X > s1) total += numerics::integrate(f, s1, std::min(X, s2), rel_tol);
  if (X > s2) total += 1.0 / (1.0 + s2) - (std::isinf(X) ? 0.0 : 1.0 / (1.0 + X));
  return total;
}

}  // namespace

double energy_density(const RadialCarrier& c, double r) {
  require_radius(r);
  const double s = r + c.r_o;
  return c.E_M() * c.r_o / (four_pi * r * r * s * s);
}

FieldIntensity field_intensity(const RadialCarrier& c, double r) {
  require_radius(r);
  return {-c.r_o / (r * (r + c.r_o)), -std::log1p(c.r_o / r)};
}

double divergence_fd(const RadialCarrier& c, double r, double h) {
  if (!(h > 0.0 && r > h)) fail(ErrorKind::ConfigInvalid, "need r > h > 0");
  auto flux = [&](double x) { return x * x * field_intensity(c, x).w_r; };
  return (flux(r + h) - flux(r - h)) / (2.0 * h * r * r);
}

double ricci_scalar_fd(double r_o, double r, double h) {
  if (!(h > 0.0 && r > h)) fail(ErrorKind::ConfigInvalid, "need r > h > 0");
  RadialCarrier c{r_o, 1.0, {}};
  auto W = [&](double x) { return field_intensity(c, x).W; };
  const double w0 = W(r), wp = W(r + h), wm = W(r - h);
  const double d1 = (wp - wm) / (2.0 * h);
  const double d2 = (wp - 2.0 * w0 + wm) / (h * h);
  return 2.0 * (d2 + 2.0 * d1 / r + d1 * d1);
}

DensityResiduals density_identities(const RadialCarrier& c, double r, double h) {
  require_radius(r);
  const double G = c.coupling;
  const double s = r + c.r_o;
  const double div_w = -c.r_o * c.r_o / (r * r * s * s);
  const double w = field_intensity(c, r).w_r;
  const double eps_a = -div_w / (four_pi * G);
  const double eps_p = w * w / (four_pi * G);
  const double eps = energy_density(c, r);

  DensityResiduals out;
  out.eps = eps;
  out.active = std::abs(eps_a - eps);
  out.passive = std::abs(eps_p - eps);
  out.active_passive = std::abs(eps_a - eps_p);
  out.fd_divergence = std::abs(divergence_fd(c, r, h) - div_w);
  out.ricci = std::abs(ricci_scalar_fd(c.r_o, r, h) / (8.0 * units::pi * G) - (eps_a + eps_p));
  return out;
}

EnclosedEnergy enclosed_energy(const RadialCarrier& c, double R, double rel_tol) {
  if (!(R >= 0.0)) fail(ErrorKind::NonPositiveRadius, "R must be non-negative");
  EnclosedEnergy out;
  if (R == 0.0) return out;
  out.analytic = std::isinf(R) ? c.E_M() : c.E_M() * R / (R + c.r_o);
  out.quadrature = c.E_M() * profile_integral(R / c.r_o, rel_tol);
  return out;
}

double enclosed_fraction(double r_o, double R) {
  if (!(R >= 0.0)) fail(ErrorKind::NonPositiveRadius, "R must be non-negative");
  if (std::isinf(R)) return 1.0;
  return R / (R + r_o);
}

AttractionCheck attraction_law_check(const RadialCarrier& c, double E_m, double r) {
  require_radius(r);
  AttractionCheck out;
  out.U0 = -c.coupling * c.E_M() * E_m / r;
  const SpacetimeMetric m = build_metric(central_potential(c.r_o), Vec3{r, 0.0, 0.0});
  out.residual = std::abs(1.0 / std::sqrt(m.g[0][0]) - (1.0 - out.U0 / E_m));
  return out;
}

double gauss_flux(double r_o, double r) {
  require_radius(r);
  // Azimuthal symmetry: 2 pi r^2 integral of (f/E_m . rhat) sin(theta) d theta.
  auto f = [&](double th) {
    const Vec3 x{r * std::sin(th), 0.0, r * std::cos(th)};
    const GeodesicForce g = geodesic_force(r_o, 1.0, x, Vec3{});
    return dot(g.force, x / r) * std::sin(th);
  };
  return 2.0 * units::pi * r * r * numerics::integrate(f, 0.0, units::pi, 1e-13);
}

ElectricProfile electric_profile(const ElectricCarrier& c, double r) {
  require_radius(r);
  if (!(c.r_e > 0.0) || !(c.r_o > 0.0)) fail(ErrorKind::NonPositiveRadius, "r_e and r_o must be positive");
  const double s = r + c.r_o;
  ElectricProfile p;
  p.rho = c.e * c.r_o / (four_pi * r * r * s * s);
  p.E_r = c.e * c.r_o / (c.r_e * r * s);
  p.D_r = c.e / (r * s);
  p.W_e = (c.e / c.r_e) * std::log1p(c.r_o / r);
  // (1/r^2) d(r^2 D)/dr with r^2 D = e r / (r + r_o)
  const double div_D = c.e * c.r_o / (r * r * s * s);
  p.gauss_residual = (c.e != 0.0) ? std::abs(div_D - four_pi * p.rho) / std::abs(four_pi * p.rho) : 0.0;
  return p;
}

ElectricTotals electric_totals(const ElectricCarrier& c, double rel_tol) {
  if (!(c.r_e > 0.0) || !(c.r_o > 0.0)) fail(ErrorKind::NonPositiveRadius, "r_e and r_o must be positive");
  const double inf = std::numeric_limits<double>::infinity();
  ElectricTotals t;
  // Scaled coordinate x = r / r_o; 4 pi r^2 rho dr = e dx / (1 + x)^2.
  t.charge = c.e * profile_integral(inf, rel_tol);
  t.charge_inside_ro = c.e * profile_integral(1.0, rel_tol);

  // rho W_e d^3x = (e^2 / r_e) ln(1 + 1/x) / (1 + x)^2 dx; x = t^2 on [0, 1] removes the log end point.
  auto log_part = [](double x) { return std::log1p(1.0 / x) / ((1.0 + x) * (1.0 + x)); };
  const double inner = numerics::integrate([&](double s) { return s > 0.0 ? 2.0 * s * log_part(s * s) : 0.0; },
                                           0.0, 1.0, rel_tol);
  const double outer = numerics::integrate(log_part, 1.0, inf, rel_tol);
  t.self_energy_potential = (c.e * c.e / c.r_e) * (inner + outer);

  // E D / (4 pi) d^3x = (e^2 r_o / r_e) dr / (r + r_o)^2 = (e^2 / r_e) dx / (1 + x)^2
  t.self_energy_field = (c.e * c.e / c.r_e) * profile_integral(inf, rel_tol);
  t.self_energy_constant = (c.e / c.r_e) * t.charge;
  t.self_energy_closed = c.e * c.e / c.r_e;
  return t;
}

Vec3 self_force(const ElectricCarrier& c, const Vec3& at) {
  const double W = c.e / c.r_e;
  auto potential = [W](const Vec3&) { return W; };
  Vec3 grad;
  const double h = 1e-6 * std::max(norm(at), c.r_o);
  for (int k = 0; k < 3; ++k) {
    Vec3 p = at, m = at;
    p[k] += h;
    m[k] -= h;
    grad[k] = -(c.e) * (potential(p) - potential(m)) / (2.0 * h);
  }
  return grad;
}

double superposed_density(const std::vector<CarrierSource>& sources, const Vec3& x) {
  double n = 0.0;
  for (const auto& s : sources) {
    const double d = norm(x - s.center);
    require_radius(d);
    const double q = d + s.r_o;
    n += s.e * s.r_o / (four_pi * d * d * q * q);
  }
  return n;
}

}  // namespace flatspace
