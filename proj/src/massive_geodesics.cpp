#include "flatspace/massive_geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "flatspace/errors.hpp"
#include "flatspace/numerics.hpp"
#include "flatspace/units.hpp"

namespace flatspace {

namespace {

constexpr double two_pi = 2.0 * units::pi;

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::NonPositiveRadius, "radius must be positive");
}

// Roots of a u^2 + b u + c in increasing order; false when complex.
bool quadratic_roots(double a, double b, double c, double& lo, double& hi) {
  double disc = b * b - 4.0 * a * c;
  // Circular orbits sit on the double root; allow rounding below zero.
  if (disc < 0.0 && disc > -1e-12 * b * b) disc = 0.0;
  if (disc < 0.0 || a == 0.0) return false;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double x1 = q / a;
  double x2 = c / q;
  lo = std::min(x1, x2);
  hi = std::max(x1, x2);
  return true;
}

double bracket_root(const std::function<double(double)>& f, double a, double b) {
  boost::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::abs(x - y) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x); };
  auto r = boost::math::tools::toms748_solve(f, a, b, tol, iters);
  return 0.5 * (r.first + r.second);
}

// Dimensionless geodesic system: s = p V / L, y = (t V / L, r / L, phi, (dr/dp) / V).
struct OrbitSystem {
  RadialMotion motion;
  double L;
  double V;

  void operator()(const std::array<double, 4>& y, std::array<double, 4>& dy, double) const {
    const double r = y[1] * L;
    dy[0] = motion.dtdp(r);
    dy[1] = y[3];
    dy[2] = motion.dphidp(r) * (L / V);
    dy[3] = motion.half_dPhi(r) * (L / (V * V));
  }
};

struct Scaling {
  double L;
  double V;
};

Scaling scaling_for(const RadialMotion& m, const GeodesicState& s) {
  const double vt = m.dphidp(s.r) * s.r;
  return {s.r, std::hypot(vt, s.drdp)};
}

std::array<double, 4> to_scaled(const GeodesicState& s, const Scaling& k) {
  return {s.t * k.V / k.L, s.r / k.L, s.phi, s.drdp / k.V};
}

GeodesicState from_scaled(const std::array<double, 4>& y, double sv, double p0, const Scaling& k,
                          const RadialMotion& m) {
  GeodesicState g;
  g.p = p0 + sv * k.L / k.V;
  g.t = y[0] * k.L / k.V;
  g.r = y[1] * k.L;
  g.phi = y[2];
  g.drdp = y[3] * k.V;
  g.dphidp = m.dphidp(g.r);
  return g;
}

void check_bound(Model model, double r_o, const OrbitIntegrals& ints, const GeodesicState& start) {
  require_radius(start.r);
  if (!(r_o > 0.0)) fail(ErrorKind::UnboundOrbit, "no bound orbits without a central field");
  if (!(ints.energy_excess < 0.0)) fail(ErrorKind::UnboundOrbit, "energy above the escape value");
  if (!turning_points(model, r_o, ints))
    fail(ErrorKind::TurningPointNotFound, "radial potential has no bounded well");
  RadialMotion m(model, r_o, ints);
  if (m.drift(start.r, start.drdp) > 1e-8)
    fail(ErrorKind::ConfigInvalid, "start state inconsistent with the orbit integrals");
}

// Propagate a state by dp with a tight tolerance; used for event refinement.
GeodesicState propagate(const RadialMotion& m, const GeodesicState& from, double dp, double tol) {
  if (dp == 0.0) return from;
  Scaling k = scaling_for(m, from);
  OrbitSystem sys{m, k.L, k.V};
  const double s_end = dp * k.V / k.L;
  numerics::DenseRK<4> rk(tol, tol);
  rk.initialize(to_scaled(from, k), 0.0, s_end);
  while ((s_end > 0.0) ? rk.time() < s_end : rk.time() > s_end) rk.step(sys);
  return from_scaled(rk.at(s_end), s_end, from.p, k, m);
}

void fill_residuals(Trajectory& tr, const RadialMotion& m) {
  for (auto& s : tr.samples) {
    s.residual = m.residual(s.state.r, s.state.drdp);
    s.drift = m.drift(s.state.r, s.state.drdp);
    tr.max_residual = std::max(tr.max_residual, s.residual);
    tr.max_drift = std::max(tr.max_drift, s.drift);
  }
}

void enforce_tolerance(const Trajectory& tr, double orbits) {
  // Drift grows linearly with the number of revolutions at fixed local tolerance.
  const double allowed = std::max(10.0 * tr.tol, 1e-14) * std::max(1.0, orbits);
  if (tr.max_drift > allowed)
    fail(ErrorKind::ToleranceNotMet, "first-integral drift " + std::to_string(tr.max_drift) +
                                         " exceeds " + std::to_string(allowed));
}

}  // namespace

RadialMotion::RadialMotion(Model model, double r_o, const OrbitIntegrals& integrals)
    : model_(model), r_o_(r_o), ints_(integrals) {}

double RadialMotion::Phi(double r) const {
  const double J = ints_.J_phi, u = 1.0 / r;
  switch (model_) {
    case Model::flatspace_weber:
      return ints_.energy_excess + 2.0 * r_o_ * u + (r_o_ * r_o_ - J * J) * u * u;
    case Model::schwarzschild:
      return ints_.energy_excess + 2.0 * r_o_ * u - J * J * u * u + 2.0 * r_o_ * J * J * u * u * u;
    case Model::newtonian:
      return ints_.energy_excess + 2.0 * r_o_ * u - J * J * u * u;
  }
  return 0.0;
}

double RadialMotion::half_dPhi(double r) const {
  const double J = ints_.J_phi, u = 1.0 / r;
  switch (model_) {
    case Model::flatspace_weber:
      return -r_o_ * u * u + (J * J - r_o_ * r_o_) * u * u * u;
    case Model::schwarzschild:
      return -r_o_ * u * u + J * J * u * u * u - 3.0 * r_o_ * J * J * u * u * u * u;
    case Model::newtonian:
      return -r_o_ * u * u + J * J * u * u * u;
  }
  return 0.0;
}

double RadialMotion::dtdp(double r) const {
  switch (model_) {
    case Model::flatspace_weber: {
      const double q = 1.0 + r_o_ / r;
      return q * q;
    }
    case Model::schwarzschild:
      return ints_.energy_ratio / (1.0 - 2.0 * r_o_ / r);
    case Model::newtonian:
      return 1.0;
  }
  return 1.0;
}

double RadialMotion::dphidp(double r) const { return ints_.J_phi / (r * r); }

double RadialMotion::drift(double r, double drdp) const {
  const double J = ints_.J_phi, u = 1.0 / r;
  const double scale = std::abs(ints_.energy_excess) + 2.0 * r_o_ * u + J * J * u * u;
  return std::abs(drdp * drdp - Phi(r)) / scale;
}

double RadialMotion::residual(double r, double drdp) const {
  double scale = 0.0;
  switch (model_) {
    case Model::flatspace_weber: {
      const double q = 1.0 + r_o_ / r;
      scale = q * q;
      break;
    }
    case Model::schwarzschild:
      scale = ints_.energy_ratio * ints_.energy_ratio;
      break;
    case Model::newtonian:
      return drift(r, drdp);
  }
  return std::abs(drdp * drdp - Phi(r)) / scale;
}

OrbitSetup orbit_from_elements(double r_o, double a, double ecc) {
  if (!(a > 0.0)) fail(ErrorKind::NonPositiveRadius, "semi-major axis must be positive");
  if (!(ecc >= 0.0 && ecc < 1.0)) fail(ErrorKind::UnboundOrbit, "eccentricity must lie in [0, 1)");
  if (!(r_o > 0.0)) fail(ErrorKind::UnboundOrbit, "no bound orbits without a central field");
  const double L2 = r_o * a * (1.0 - ecc * ecc);
  const double rp = a * (1.0 - ecc);
  const double k = r_o / rp;
  const double lam = L2 / (rp * rp);
  const double kappa = (lam - 2.0 * k - k * k) / (1.0 + lam);
  if (!(kappa < 0.0)) fail(ErrorKind::UnboundOrbit, "elements give an unbound flatspace orbit");

  OrbitSetup o;
  o.integrals.energy_excess = kappa;
  o.integrals.energy_ratio = 1.0 / std::sqrt(1.0 - kappa);
  o.integrals.L = std::sqrt(L2);
  o.integrals.J_phi = o.integrals.L * std::sqrt(1.0 - kappa);
  o.state.r = rp;
  o.state.dphidp = o.integrals.J_phi / (rp * rp);
  return o;
}

OrbitSetup orbit_from_turning_points(Model model, double r_o, double r_min, double r_max) {
  require_radius(r_min);
  if (!(r_max > r_min)) fail(ErrorKind::ConfigInvalid, "need r_max > r_min");
  if (!(r_o > 0.0)) fail(ErrorKind::UnboundOrbit, "no bound orbits without a central field");
  const double u1 = 1.0 / r_min, u2 = 1.0 / r_max;
  const double a = 0.5 * (r_min + r_max);
  const double ecc = (r_max - r_min) / (r_max + r_min);

  OrbitSetup o;
  double J2 = 0.0;
  switch (model) {
    case Model::flatspace_weber:
      J2 = 2.0 * r_o * r_min * r_max / (r_min + r_max) + r_o * r_o;
      o.integrals.energy_excess = -r_o / a;
      o.integrals.energy_ratio = 1.0 / std::sqrt(1.0 + r_o / a);
      break;
    case Model::schwarzschild: {
      const double den = (u1 + u2) - 2.0 * r_o * (u1 * u1 + u1 * u2 + u2 * u2);
      if (!(den > 0.0)) fail(ErrorKind::UnboundOrbit, "turning points inside the unstable region");
      J2 = 2.0 * r_o / den;
      o.integrals.energy_excess = -2.0 * r_o * u1 + J2 * u1 * u1 * (1.0 - 2.0 * r_o * u1);
      if (!(o.integrals.energy_excess < 0.0)) fail(ErrorKind::UnboundOrbit, "unbound Schwarzschild orbit");
      o.integrals.energy_ratio = std::sqrt(1.0 + o.integrals.energy_excess);
      break;
    }
    case Model::newtonian:
      J2 = 2.0 * r_o / (u1 + u2);
      o.integrals.energy_excess = -2.0 * r_o / (r_min + r_max);
      o.integrals.energy_ratio = 1.0;
      break;
  }
  o.integrals.J_phi = std::sqrt(J2);
  o.integrals.L = std::sqrt(r_o * a * (1.0 - ecc * ecc));
  o.state.r = r_min;
  o.state.dphidp = o.integrals.J_phi / (r_min * r_min);
  return o;
}

OrbitSetup circular_orbit(double r_o, double r) {
  require_radius(r);
  if (!(r_o > 0.0)) fail(ErrorKind::UnboundOrbit, "no bound orbits without a central field");
  const double k = r_o / r;
  OrbitSetup o;
  o.integrals.energy_excess = -k;
  o.integrals.energy_ratio = 1.0 / std::sqrt(1.0 + k);
  o.integrals.L = std::sqrt(r_o * r);
  o.integrals.J_phi = std::sqrt(r_o * (r + r_o));
  o.state.r = r;
  o.state.dphidp = o.integrals.J_phi / (r * r);
  return o;
}

std::optional<TurningPoints> turning_points(Model model, double r_o, const OrbitIntegrals& ints) {
  const double x = ints.energy_excess;
  const double J2 = ints.J_phi * ints.J_phi;
  if (!(x < 0.0) || !(r_o > 0.0)) return std::nullopt;

  double u_lo = 0.0, u_hi = 0.0;
  if (model == Model::schwarzschild) {
    // f(u) = x + 2 r_o u - J^2 u^2 + 2 r_o J^2 u^3; bound orbits sit between the
    // two smallest positive roots, separated by the local maximum of f.
    if (J2 <= 12.0 * r_o * r_o) return std::nullopt;
    auto f = [&](double u) { return x + u * (2.0 * r_o + u * (-J2 + 2.0 * r_o * J2 * u)); };
    const double J = std::sqrt(J2);
    const double crit_hi = (J2 + J * std::sqrt(J2 - 12.0 * r_o * r_o)) / (6.0 * r_o * J2);
    const double crit_lo = 1.0 / (3.0 * J2 * crit_hi);
    if (!(f(crit_lo) > 0.0) || !(f(crit_hi) < 0.0)) return std::nullopt;
    u_lo = bracket_root(f, 0.0, crit_lo);
    u_hi = bracket_root(f, crit_lo, crit_hi);
  } else {
    const double a2 = (model == Model::flatspace_weber) ? r_o * r_o - J2 : -J2;
    if (!(a2 < 0.0)) return std::nullopt;
    if (!quadratic_roots(a2, 2.0 * r_o, x, u_lo, u_hi)) return std::nullopt;
    if (!(u_lo > 0.0) || !(u_hi >= u_lo)) return std::nullopt;
  }
  return TurningPoints{1.0 / u_hi, 1.0 / u_lo};
}

Trajectory integrate_orbit(Model model, double r_o, const GeodesicState& start,
                           const OrbitIntegrals& integrals, int n_orbits, double tol) {
  if (n_orbits < 1) fail(ErrorKind::ConfigInvalid, "n_orbits must be at least 1");
  if (!(tol > 0.0)) fail(ErrorKind::ConfigInvalid, "tolerance must be positive");
  check_bound(model, r_o, integrals, start);

  RadialMotion m(model, r_o, integrals);
  Scaling k = scaling_for(m, start);
  OrbitSystem sys{m, k.L, k.V};

  Trajectory tr;
  tr.model = model;
  tr.r_o = r_o;
  tr.integrals = integrals;
  tr.tol = tol;
  GeodesicState first = start;
  first.dphidp = m.dphidp(start.r);
  tr.samples.push_back({first, 0.0, 0.0});

  numerics::DenseRK<4> rk(tol, tol);
  rk.initialize(to_scaled(start, k), 0.0, 1e-3);

  // Generous cap on steps: a revolution needs a few hundred at tol = 1e-14.
  const long max_steps = 200000L * n_orbits;
  int minima = 0;
  for (long step = 0; step < max_steps; ++step) {
    const double prev_vr = rk.state()[3];
    rk.step(sys);
    const double vr = rk.state()[3];
    if (prev_vr < 0.0 && vr >= 0.0 && ++minima == n_orbits) {
      const double s_min = numerics::refine_root([&](double s) { return rk.at(s)[3]; },
                                                 rk.previous_time(), rk.time(), 1e-15 * rk.time());
      GeodesicState last = from_scaled(rk.at(s_min), s_min, start.p, k, m);
      last.drdp = 0.0;
      tr.samples.push_back({last, 0.0, 0.0});
      fill_residuals(tr, m);
      enforce_tolerance(tr, n_orbits);
      return tr;
    }
    tr.samples.push_back({from_scaled(rk.state(), rk.time(), start.p, k, m), 0.0, 0.0});
  }
  fail(ErrorKind::NoConvergence, "step limit reached before the requested orbits completed");
}

Trajectory integrate_orbit_span(Model model, double r_o, const GeodesicState& start,
                                const OrbitIntegrals& integrals, double dp, double tol) {
  if (!(tol > 0.0)) fail(ErrorKind::ConfigInvalid, "tolerance must be positive");
  check_bound(model, r_o, integrals, start);
  RadialMotion m(model, r_o, integrals);
  Scaling k = scaling_for(m, start);
  OrbitSystem sys{m, k.L, k.V};

  Trajectory tr;
  tr.model = model;
  tr.r_o = r_o;
  tr.integrals = integrals;
  tr.tol = tol;
  GeodesicState first = start;
  first.dphidp = m.dphidp(start.r);
  tr.samples.push_back({first, 0.0, 0.0});

  const double s_end = dp * k.V / k.L;
  if (s_end != 0.0) {
    numerics::DenseRK<4> rk(tol, tol);
    rk.initialize(to_scaled(start, k), 0.0, std::copysign(1e-3, s_end));
    const bool forward = s_end > 0.0;
    while (forward ? rk.time() < s_end : rk.time() > s_end) {
      rk.step(sys);
      if (forward ? rk.time() < s_end : rk.time() > s_end)
        tr.samples.push_back({from_scaled(rk.state(), rk.time(), start.p, k, m), 0.0, 0.0});
    }
    tr.samples.push_back({from_scaled(rk.at(s_end), s_end, start.p, k, m), 0.0, 0.0});
  }
  fill_residuals(tr, m);
  enforce_tolerance(tr, std::abs(first.dphidp * dp) / two_pi);
  return tr;
}

PrecessionResult precession_numeric(const Trajectory& tr) {
  RadialMotion m(tr.model, tr.r_o, tr.integrals);
  const double local_tol = std::min(tr.tol, 1e-13);
  PrecessionResult out;
  for (std::size_t i = 0; i + 1 < tr.samples.size(); ++i) {
    const GeodesicState& a = tr.samples[i].state;
    const GeodesicState& b = tr.samples[i + 1].state;
    double phi_min;
    if (i == 0 && a.drdp == 0.0 && b.drdp > 0.0) {
      phi_min = a.phi;
    } else if (!(a.drdp < 0.0 && b.drdp >= 0.0)) {
      continue;
    } else if (b.drdp == 0.0) {
      phi_min = b.phi;
    } else {
      // phi tolerance 1e-12 translated into the parameter p.
      const double p_tol = 1e-12 / m.dphidp(a.r);
      const double dp = numerics::refine_root_widening(
          [&](double h) { return propagate(m, a, h, local_tol).drdp; }, 0.0, b.p - a.p, p_tol);
      phi_min = propagate(m, a, dp, local_tol).phi;
    }
    if (!out.perihelion_phi.empty() && std::abs(phi_min - out.perihelion_phi.back()) < 1e-9) continue;
    out.perihelion_phi.push_back(phi_min);
  }
  if (out.perihelion_phi.size() < 2) fail(ErrorKind::InsufficientOrbits, "fewer than two radial minima");
  out.orbits = static_cast<int>(out.perihelion_phi.size()) - 1;
  out.per_orbit_rad = (out.perihelion_phi.back() - out.perihelion_phi.front()) / out.orbits - two_pi;
  return out;
}

double kepler_period_seconds(double r_o, double a) {
  if (!(r_o > 0.0) || !(a > 0.0)) fail(ErrorKind::NonPositiveRadius, "period needs r_o, a > 0");
  return two_pi * std::sqrt(a * a * a / r_o) / units::c;
}

PrecessionResult with_century_rate(PrecessionResult result, double period_seconds) {
  if (!(period_seconds > 0.0)) fail(ErrorKind::ConfigInvalid, "period must be positive");
  result.arcsec_per_century =
      result.per_orbit_rad * (units::seconds_per_century / period_seconds) * units::arcsec_per_rad;
  return result;
}

double precession_analytic(double r_o, double a, double ecc) {
  if (!(a > 0.0)) fail(ErrorKind::NonPositiveRadius, "semi-major axis must be positive");
  if (!(ecc >= 0.0 && ecc < 1.0)) fail(ErrorKind::UnboundOrbit, "eccentricity must lie in [0, 1)");
  return 3.0 * two_pi * r_o / (a * (1.0 - ecc * ecc));
}

double precession_geodesic_exact(double r_o, double J_phi) {
  if (!(J_phi > r_o)) fail(ErrorKind::UnboundOrbit, "J_phi must exceed r_o");
  const double q = r_o / J_phi;
  // 1/sqrt(1 - q^2) - 1 without cancellation for small q.
  const double s = std::sqrt(1.0 - q * q);
  return two_pi * (q * q) / (s * (1.0 + s));
}

double precession_quadrature(Model model, double r_o, const OrbitIntegrals& ints) {
  auto tp = turning_points(model, r_o, ints);
  if (!tp) fail(ErrorKind::TurningPointNotFound, "no bounded radial well");
  const double mid = 0.5 * (tp->r_min + tp->r_max);
  const double half = 0.5 * (tp->r_max - tp->r_min);
  const double J = ints.J_phi;
  auto radius = [&](double psi) { return mid - half * std::cos(psi); };

  double integral = 0.0;
  switch (model) {
    case Model::flatspace_weber:
    case Model::newtonian: {
      // r^2 Phi = c2 (r - r_min)(r_max - r)
      const double c2 = -ints.energy_excess;
      integral = numerics::integrate([&](double psi) { return 1.0 / radius(psi); }, 0.0, units::pi, 1e-14);
      integral *= J / std::sqrt(c2);
      break;
    }
    case Model::schwarzschild: {
      // r^3 Phi = (1 - E^2)(r - r_min)(r_max - r)(r - r3)
      const double c3 = -ints.energy_excess;
      const double r3 = 2.0 * r_o * J * J / (c3 * tp->r_min * tp->r_max);
      integral = numerics::integrate(
          [&](double psi) {
            const double r = radius(psi);
            return 1.0 / std::sqrt(r * (r - r3));
          },
          0.0, units::pi, 1e-14);
      integral *= J / std::sqrt(c3);
      break;
    }
  }
  return 2.0 * integral - two_pi;
}

double rosette_rhs(double u, double du, double r_o, double L) {
  const double den = 1.0 - 3.0 * r_o * u;
  if (!(den > 0.0)) fail(ErrorKind::DenominatorVanishes, "3 r_o u >= 1");
  return (r_o / (L * L) - u + 4.5 * r_o * u * u + 1.5 * r_o * du * du) / den;
}

RosetteSetup rosette_from_elements(double r_o, double a, double ecc) {
  if (!(a > 0.0)) fail(ErrorKind::NonPositiveRadius, "semi-major axis must be positive");
  if (!(ecc >= 0.0 && ecc < 1.0)) fail(ErrorKind::UnboundOrbit, "eccentricity must lie in [0, 1)");
  if (!(r_o > 0.0)) fail(ErrorKind::UnboundOrbit, "no bound orbits without a central field");
  return {std::sqrt(r_o * a * (1.0 - ecc * ecc)), 1.0 / (a * (1.0 - ecc)), 0.0};
}

namespace {

// y = (u / U, u' / U) with phi as the independent variable.
struct RosetteSystem {
  double r_o, L, U;
  void operator()(const std::array<double, 2>& y, std::array<double, 2>& dy, double) const {
    dy[0] = y[1];
    dy[1] = rosette_rhs(y[0] * U, y[1] * U, r_o, L) / U;
  }
};

RosetteSample rosette_propagate(const RosetteSystem& sys, const RosetteSample& from, double dphi,
                                double tol) {
  if (dphi == 0.0) return from;
  numerics::DenseRK<2> rk(tol, tol);
  rk.initialize({from.u / sys.U, from.du / sys.U}, from.phi, dphi);
  const double end = from.phi + dphi;
  while (rk.time() < end) rk.step(sys);
  auto y = rk.at(end);
  return {end, y[0] * sys.U, y[1] * sys.U};
}

}  // namespace

RosetteTrajectory integrate_rosette(double r_o, double L, double u0, double du0, int n_orbits,
                                    double tol) {
  if (n_orbits < 1) fail(ErrorKind::ConfigInvalid, "n_orbits must be at least 1");
  if (!(u0 > 0.0)) fail(ErrorKind::NonPositiveRadius, "u must be positive");
  if (!(L > 0.0)) fail(ErrorKind::UnboundOrbit, "L must be positive");
  RosetteSystem sys{r_o, L, u0};
  RosetteTrajectory tr{r_o, L, tol, {}};
  tr.samples.push_back({0.0, u0, du0});

  numerics::DenseRK<2> rk(tol, tol);
  rk.initialize({1.0, du0 / u0}, 0.0, 1e-3);
  int maxima = 0;
  const long max_steps = 200000L * n_orbits;
  for (long step = 0; step < max_steps; ++step) {
    const double prev = rk.state()[1];
    rk.step(sys);
    const auto& y = rk.state();
    if (!(y[0] > 0.0)) fail(ErrorKind::UnboundOrbit, "rosette orbit escaped (u <= 0)");
    if (prev > 0.0 && y[1] <= 0.0 && ++maxima == n_orbits) {
      const double phi = numerics::refine_root([&](double x) { return rk.at(x)[1]; }, rk.previous_time(),
                                               rk.time(), 1e-13);
      auto z = rk.at(phi);
      tr.samples.push_back({phi, z[0] * u0, z[1] * u0});
      return tr;
    }
    tr.samples.push_back({rk.time(), y[0] * u0, y[1] * u0});
  }
  fail(ErrorKind::NoConvergence, "step limit reached before the requested orbits completed");
}

PrecessionResult precession_numeric(const RosetteTrajectory& tr) {
  if (tr.samples.empty()) fail(ErrorKind::InsufficientOrbits, "empty trajectory");
  RosetteSystem sys{tr.r_o, tr.L, tr.samples.front().u};
  const double local_tol = std::min(tr.tol, 1e-13);
  PrecessionResult out;
  for (std::size_t i = 0; i + 1 < tr.samples.size(); ++i) {
    const RosetteSample& a = tr.samples[i];
    const RosetteSample& b = tr.samples[i + 1];
    double phi_max;
    if (i == 0 && a.du == 0.0 && b.du < 0.0) {
      phi_max = a.phi;
    } else if (a.du > 0.0 && b.du <= 0.0) {
      if (b.du == 0.0) {
        phi_max = b.phi;
      } else {
        const double h = numerics::refine_root_widening(
            [&](double d) { return rosette_propagate(sys, a, d, local_tol).du; }, 0.0, b.phi - a.phi, 1e-12);
        phi_max = a.phi + h;
      }
    } else {
      continue;
    }
    if (!out.perihelion_phi.empty() && std::abs(phi_max - out.perihelion_phi.back()) < 1e-9) continue;
    out.perihelion_phi.push_back(phi_max);
  }
  if (out.perihelion_phi.size() < 2) fail(ErrorKind::InsufficientOrbits, "fewer than two perihelia");
  out.orbits = static_cast<int>(out.perihelion_phi.size()) - 1;
  out.per_orbit_rad = (out.perihelion_phi.back() - out.perihelion_phi.front()) / out.orbits - two_pi;
  return out;
}

GeodesicForce geodesic_force(double r_o, double E_m, const Vec3& x, const Vec3& v) {
  const double r = norm(x);
  require_radius(r);
  const Vec3 g = (-r_o / (r * r * r)) * x;
  return {E_m * g, g - dot(v, g) * v};
}

}  // namespace flatspace
