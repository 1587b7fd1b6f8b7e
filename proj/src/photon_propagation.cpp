#include "flatspace/photon_propagation.hpp"

#include <algorithm>
#include <cmath>

#include "flatspace/errors.hpp"
#include "flatspace/numerics.hpp"
#include "flatspace/units.hpp"

namespace flatspace {

CoordinateSpeed coordinate_speed(double r_o, double r) {
  if (!(r > 0.0)) fail(ErrorKind::NonPositiveRadius, "r must be positive");
  const double q = 1.0 + r_o / r;
  return {1.0 / (q * q), 1.0 / q};
}

ShapiroDelay shapiro_delay(const EchoGeometry& geom) {
  const double R = geom.R_s;
  if (!(geom.r_es > 0.0 && geom.r_ms > 0.0 && R > 0.0) || !(geom.r_o >= 0.0))
    fail(ErrorKind::GeometryInvalid, "echo geometry needs positive lengths");
  if (R > std::min(geom.r_es, geom.r_ms))
    fail(ErrorKind::GeometryInvalid, "grazing distance exceeds an endpoint radius");

  // Straight path y = R, x = R tan(theta): (1/ldot - 1) dx = (2 r_o sec(theta) + r_o^2 / R) dtheta.
  const double th_e = std::atan2(std::sqrt(geom.r_es * geom.r_es - R * R), R);
  const double th_m = std::atan2(std::sqrt(geom.r_ms * geom.r_ms - R * R), R);
  const double r_o = geom.r_o;
  auto f = [r_o, R](double th) { return 2.0 * r_o / std::cos(th) + r_o * r_o / R; };

  ShapiroDelay d;
  if (r_o > 0.0) {
    d.quadrature = 2.0 * (numerics::integrate(f, -th_e, 0.0, 1e-12) + numerics::integrate(f, 0.0, th_m, 1e-12));
    d.closed_form = 4.0 * r_o * std::log(4.0 * geom.r_ms * geom.r_es / (R * R));
  }
  d.observer = d.quadrature / (1.0 + r_o / geom.r_es);
  return d;
}

Deflection deflection_integral(double r_o, double R_s) {
  if (!(R_s > 0.0) || !(r_o >= 0.0) || !(R_s > r_o))
    fail(ErrorKind::GeometryInvalid, "deflection needs R_s > r_o >= 0");
  Deflection d;
  if (r_o == 0.0) return d;
  const double q = r_o / R_s;
  auto f = [q](double th) {
    const double c = std::cos(th);
    const double s = 1.0 + q * c;
    return c / (s * s * s);
  };
  d.quadrature = -4.0 * q * numerics::integrate(f, 0.0, 0.5 * units::pi, 1e-13);
  d.closed_form = -4.0 * q;
  return d;
}

WaveVector wave_vector(double r_o, double r, const Vec3& direction, double omega0) {
  if (!(r > 0.0)) fail(ErrorKind::NonPositiveRadius, "r must be positive");
  const double n = norm(direction);
  if (!(n > 0.0)) fail(ErrorKind::GeometryInvalid, "direction must be non-zero");
  const Vec3 nh = direction / n;
  const double sq = 1.0 / (1.0 + r_o / r);  // sqrt(g00)
  WaveVector w;
  w.K[0] = omega0 / sq;
  for (int i = 0; i < 3; ++i) w.K[i + 1] = -nh[i] * w.K[0] / sq;
  const double g00 = sq * sq;
  const double s = w.K[0] * w.K[0] / g00 - (w.K[1] * w.K[1] + w.K[2] * w.K[2] + w.K[3] * w.K[3]);
  w.null_residual = std::abs(s) / (w.K[0] * w.K[0]);
  return w;
}

double redshift_ratio(double r_o, double r1, double r2) {
  const double s1 = coordinate_speed(r_o, r1).slowness;
  const double s2 = coordinate_speed(r_o, r2).slowness;
  return s2 / s1;
}

RayState ray_launch(double u0) { return {0.0, -u0, units::pi, u0}; }

double ray_closed_form(double phi, double u0, double r_o) {
  return u0 * std::sin(phi) + 2.0 * r_o * u0 * u0 * (1.0 + std::cos(phi));
}

namespace {

// psi = phi_start - phi, y = (u / u0, (du/dphi) / u0).
struct RaySystem {
  double eps;  // 2 r_o u0
  void operator()(const std::array<double, 2>& y, std::array<double, 2>& dy, double) const {
    dy[0] = -y[1];
    dy[1] = -(eps - y[0]);
  }
};

}  // namespace

RayResult fermat_ray_integrate(const RayState& state, double r_o, double tol) {
  const double u0 = state.u0;
  if (!(u0 > 0.0)) fail(ErrorKind::GeometryInvalid, "u0 must be positive");
  if (!(r_o >= 0.0)) fail(ErrorKind::GeometryInvalid, "r_o must be non-negative");
  const double u_capture = (r_o > 0.0) ? 1.0 / (4.0 * r_o) : INFINITY;
  const double bound = 32.0 * (r_o * u0) * (r_o * u0) + 1e3 * tol;

  RayResult out;
  auto record = [&](double phi, double u, double du) {
    if (u > u_capture) fail(ErrorKind::RayCaptured, "ray entered u > 1/(4 r_o)");
    const double inv = (1.0 - 4.0 * r_o * u) * (du * du + u * u);
    const double res = std::abs(inv - u0 * u0) / (u0 * u0);
    if (res > bound) fail(ErrorKind::ToleranceNotMet, "ray first integral drifted");
    out.max_invariant_residual = std::max(out.max_invariant_residual, res);
    out.trajectory.push_back({phi, u, du, res});
  };
  record(state.phi, state.u, state.du);

  RaySystem sys{2.0 * r_o * u0};
  numerics::DenseRK<2> rk(tol, tol);
  rk.initialize({state.u / u0, state.du / u0}, 0.0, 1e-3);
  for (long step = 0; step < 1000000; ++step) {
    const double prev = rk.state()[0];
    rk.step(sys);
    const auto& y = rk.state();
    if (prev > 0.0 && y[0] <= 0.0) {
      const double psi = numerics::refine_root([&](double s) { return rk.at(s)[0]; }, rk.previous_time(),
                                               rk.time(), 1e-15);
      auto z = rk.at(psi);
      out.deflection = state.phi - psi;
      record(out.deflection, std::max(z[0], 0.0) * u0, z[1] * u0);
      return out;
    }
    record(state.phi - rk.time(), y[0] * u0, y[1] * u0);
  }
  fail(ErrorKind::NoConvergence, "ray did not leave the field");
}

}  // namespace flatspace
