#include "flatspace/spin_transport.hpp"

#include <algorithm>
#include <cmath>

#include "flatspace/errors.hpp"
#include "flatspace/numerics.hpp"
#include "flatspace/units.hpp"

namespace flatspace {

FourPotential rotating_potential(const RotatingFieldSpec& spec) {
  return rotating_central_potential(spec.r_o, spec.k, spec.omega);
}

Connection rotating_connections(const RotatingFieldSpec& spec, const Vec3& x) {
  const double r = norm(x);
  if (!(r > 0.0)) fail(ErrorKind::NonPositiveRadius, "connection evaluated at the origin");
  const double ro = spec.r_o;
  const double rr = r + ro;
  const double g00 = (r / rr) * (r / rr);
  const double inv_g00 = (rr / r) * (rr / r);  // (1 - G0)^2
  const double r3 = r * r * r, r5 = r3 * r * r;

  Vec3 dg;  // d_k g00
  for (int k = 0; k < 3; ++k) dg[k] = 2.0 * ro * x[k] / (rr * rr * rr);

  const Vec3 wx = cross(spec.omega, x);
  const Vec3 G = (2.0 * spec.k / r3) * wx;

  // D[j][i] = d_j (g00 G_i)
  double D[3][3];
  for (int j = 0; j < 3; ++j) {
    Vec3 ej;
    ej[j] = 1.0;
    const Vec3 dwx = cross(spec.omega, ej);
    for (int i = 0; i < 3; ++i) {
      const double dG = 2.0 * spec.k * (dwx[i] / r3 - 3.0 * wx[i] * x[j] / r5);
      D[j][i] = g00 * dG + G[i] * dg[j];
    }
  }

  Connection c{};
  c[0][0][0] = -0.5 * dot(G, dg);
  for (int i = 0; i < 3; ++i) {
    c[i + 1][0][0] = 0.5 * dg[i];
    c[0][i + 1][0] = c[0][0][i + 1] = 0.5 * inv_g00 * dg[i];
    for (int j = 0; j < 3; ++j) {
      const double gj_i0 = 0.5 * (G[j] * dg[i] + D[j][i] - D[i][j]);
      c[j + 1][i + 1][0] = c[j + 1][0][i + 1] = gj_i0;
      c[0][i + 1][j + 1] = 0.5 * inv_g00 * (D[i][j] + D[j][i]);
    }
  }
  return c;
}

Vec3 spin_rate(const Connection& c, const Vec3& v, const Vec3& S) {
  const double vS = dot(v, S);
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    double t0 = c[0][i + 1][0];
    for (int k = 0; k < 3; ++k) t0 += c[0][i + 1][k + 1] * v[k];
    double s = -t0 * vS;
    for (int j = 0; j < 3; ++j) {
      double tj = c[j + 1][i + 1][0];
      for (int k = 0; k < 3; ++k) tj += c[j + 1][i + 1][k + 1] * v[k];
      s += tj * S[j];
    }
    out[i] = s;
  }
  return out;
}

double spin_norm(const SpacetimeMetric& m, const Vec3& v, const Vec3& S) {
  const double S_[4] = {-dot(v, S), S.x, S.y, S.z};
  double n = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) n += m.ginv[a][b] * S_[a] * S_[b];
  return n;
}

PrecessionRates precession_rates(const RotatingFieldSpec& spec, const Vec3& x, const Vec3& v) {
  const double r = norm(x);
  if (!(r > 0.0)) fail(ErrorKind::NonPositiveRadius, "rates evaluated at the origin");
  const double r3 = r * r * r;
  const Vec3 rh = x / r;
  const Vec3 grad_g0 = (spec.r_o / r3) * x;
  const Vec3 G = (2.0 * spec.k / r3) * cross(spec.omega, x);
  PrecessionRates out;
  out.frame_dragging = (spec.k / r3) * (3.0 * dot(spec.omega, rh) * rh - spec.omega);
  out.geodetic = -cross(0.5 * v - G, grad_g0);
  out.de_sitter = (1.5 * spec.r_o / r3) * cross(x, v);
  return out;
}

namespace {

constexpr std::size_t kSpinDim = 19;
using SpinVec = std::array<double, kSpinDim>;

struct Kinematics {
  Vec3 x;
  Vec3 v;  // dx/dt
  double dtdp;
};

// Layout: [0..3] orbit as in massive_geodesics (s = p V / L),
// [4..12] deviation / sigma (row major), [13..15] predicted / sigma, [16..18] de Sitter / sigma.
struct SpinSystem {
  RadialMotion motion;
  RotatingFieldSpec spec;
  OrbitPlane plane;
  double L, V, sigma;

  Kinematics kinematics(const SpinVec& y) const {
    const double r = y[1] * L;
    const double phi = y[2];
    const double c = std::cos(phi), s = std::sin(phi);
    const Vec3 rh = c * plane.e1 + s * plane.e2;
    const Vec3 th = -s * plane.e1 + c * plane.e2;
    const double dtdp = motion.dtdp(r);
    const Vec3 dxdp = (y[3] * V) * rh + (r * motion.dphidp(r)) * th;
    return {r * rh, dxdp / dtdp, dtdp};
  }

  void operator()(const SpinVec& y, SpinVec& dy, double) const {
    const double r = y[1] * L;
    dy[0] = motion.dtdp(r);
    dy[1] = y[3];
    dy[2] = motion.dphidp(r) * (L / V);
    dy[3] = motion.half_dPhi(r) * (L / (V * V));

    const Kinematics k = kinematics(y);
    const Connection conn = rotating_connections(spec, k.x);
    const double dt_ds = k.dtdp * (L / V);

    // d(deviation)/dt = M (I + deviation), column j of M = spin_rate(e_j)
    Mat3 M{};
    for (int j = 0; j < 3; ++j) {
      Vec3 ej;
      ej[j] = 1.0;
      const Vec3 col = spin_rate(conn, k.v, ej);
      for (int i = 0; i < 3; ++i) M[i][j] = col[i];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = M[i][j];
        for (int m = 0; m < 3; ++m) s += M[i][m] * sigma * y[4 + 3 * m + j];
        dy[4 + 3 * i + j] = s * dt_ds / sigma;
      }

    const PrecessionRates rates = precession_rates(spec, k.x, k.v);
    const Vec3 pred = rates.frame_dragging + rates.geodetic;
    for (int i = 0; i < 3; ++i) {
      dy[13 + i] = pred[i] * dt_ds / sigma;
      dy[16 + i] = rates.de_sitter[i] * dt_ds / sigma;
    }
  }
};

double frobenius_rate(const SpinSystem& sys, const SpinVec& y) {
  const Kinematics k = sys.kinematics(y);
  const Connection conn = rotating_connections(sys.spec, k.x);
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    Vec3 ej;
    ej[j] = 1.0;
    const Vec3 col = spin_rate(conn, k.v, ej);
    s += dot(col, col);
  }
  return std::sqrt(s);
}

}  // namespace

SpinTransportResult transport_spin(const Vec3& S_initial, const RotatingFieldSpec& spec,
                                   const OrbitSetup& orbit, const OrbitPlane& plane, double sweep,
                                   double tol) {
  if (!(sweep > 0.0)) fail(ErrorKind::ConfigInvalid, "sweep angle must be positive");
  if (!(tol > 0.0)) fail(ErrorKind::ConfigInvalid, "tolerance must be positive");
  if (std::abs(dot(plane.e1, plane.e2)) > 1e-12 || std::abs(norm(plane.e1) - 1.0) > 1e-12 ||
      std::abs(norm(plane.e2) - 1.0) > 1e-12)
    fail(ErrorKind::ConfigInvalid, "orbit plane basis must be orthonormal");
  if (!(spec.r_o > 0.0)) fail(ErrorKind::UnboundOrbit, "transport needs a bound orbit (r_o > 0)");

  RadialMotion motion(Model::flatspace_weber, spec.r_o, orbit.integrals);
  const GeodesicState& st = orbit.state;
  if (!(st.r > 0.0)) fail(ErrorKind::NonPositiveRadius, "orbit radius must be positive");
  const double L = st.r;
  const double V = std::hypot(motion.dphidp(st.r) * st.r, st.drdp);

  SpinSystem sys{motion, spec, plane, L, V, 1.0};
  SpinVec y{};
  y[0] = st.t * V / L;
  y[1] = st.r / L;
  y[2] = st.phi;
  y[3] = st.drdp / V;

  // Scale the deviation so its components are O(1) over the sweep.
  const double dphidt = motion.dphidp(st.r) / motion.dtdp(st.r);
  const double duration_est = sweep / dphidt;
  const double rate = frobenius_rate(sys, y);
  sys.sigma = (rate > 0.0) ? rate * duration_est : 1.0;

  const FourPotential pot = rotating_potential(spec);
  const double S2 = dot(S_initial, S_initial);
  SpinTransportResult out;
  double norm0 = 0.0;
  auto record = [&](const SpinVec& z) {
    const Kinematics k = sys.kinematics(z);
    Mat3 dev;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dev[i][j] = sys.sigma * z[4 + 3 * i + j];
    Vec3 S = S_initial + mat_vec(dev, S_initial);
    SpinState s;
    s.t = z[0] * L / V;
    s.x = k.x;
    s.v = k.v;
    s.S = S;
    s.S0 = -dot(k.v, S);
    s.norm = spin_norm(build_metric(pot, k.x), k.v, S);
    if (out.samples.empty()) norm0 = s.norm;
    if (S2 > 0.0) out.max_norm_drift = std::max(out.max_norm_drift, std::abs(s.norm - norm0) / S2);
    out.samples.push_back(s);
    out.deviation = dev;
  };
  record(y);

  const double target = st.phi + sweep;
  numerics::DenseRK<kSpinDim> rk(tol, tol);
  rk.initialize(y, 0.0, 1e-3);
  const long max_steps = 200000L * static_cast<long>(std::ceil(sweep / (2.0 * units::pi)) + 1);
  for (long step = 0;; ++step) {
    if (step >= max_steps) fail(ErrorKind::NoConvergence, "spin transport step limit reached");
    rk.step(sys);
    if (rk.state()[2] >= target) {
      const double s_end = numerics::refine_root([&](double s) { return rk.at(s)[2] - target; },
                                                 rk.previous_time(), rk.time(), 1e-15 * rk.time());
      const SpinVec z = rk.at(s_end);
      record(z);
      out.duration = (z[0] - y[0]) * L / V;
      for (int i = 0; i < 3; ++i) {
        out.predicted_rotation[i] = sys.sigma * z[13 + i];
        out.de_sitter_rotation[i] = sys.sigma * z[16 + i];
      }
      break;
    }
    record(rk.state());
  }

  const Mat3& d = out.deviation;
  out.rotation = {0.5 * (d[2][1] - d[1][2]), 0.5 * (d[0][2] - d[2][0]), 0.5 * (d[1][0] - d[0][1])};

  const double orbits = std::max(1.0, sweep / (2.0 * units::pi));
  const bool rotating = norm(spec.omega) > 0.0 && spec.k != 0.0;
  const double allowed = std::max(1e2 * tol, 1e-12) * orbits;
  if (!rotating && out.max_norm_drift > allowed)
    fail(ErrorKind::ToleranceNotMet, "spin norm drift " + std::to_string(out.max_norm_drift));
  return out;
}

}  // namespace flatspace
