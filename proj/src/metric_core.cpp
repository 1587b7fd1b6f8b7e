#include "flatspace/metric_core.hpp"

#include <cmath>
#include <string>

#include "flatspace/errors.hpp"

namespace flatspace {

namespace {

double radius_of(const Vec3& x) {
  double r = norm(x);
  if (!(r > 0.0)) fail(ErrorKind::NonPositiveRadius, "potential evaluated at the origin");
  return r;
}

double fd_step(double rel, const Vec3& at) {
  double scale = norm(at);
  return rel * (scale > 0.0 ? scale : 1.0);
}

Vec3 gradient(const std::function<double(const Vec3&)>& f, const Vec3& at, double h) {
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    Vec3 p = at, m = at;
    p[k] += h;
    m[k] -= h;
    g[k] = (f(p) - f(m)) / (2.0 * h);
  }
  return g;
}

}  // namespace

PotentialValue FourPotential::at(const Vec3& x) const {
  PotentialValue v;
  v.g0 = g0 ? g0(x) : 0.0;
  if (gi) v.gi = gi(x);
  if (gauge) v.gi += gradient(gauge, x, fd_step(gauge_step, x));
  return v;
}

FourPotential central_potential(double r_o) {
  FourPotential p;
  p.g0 = [r_o](const Vec3& x) { return -r_o / radius_of(x); };
  p.gi = [](const Vec3&) { return Vec3{}; };
  return p;
}

FourPotential rotating_central_potential(double r_o, double k, const Vec3& omega) {
  FourPotential p = central_potential(r_o);
  p.gi = [k, omega](const Vec3& x) {
    double r = radius_of(x);
    return (2.0 * k / (r * r * r)) * cross(omega, x);
  };
  return p;
}

FourPotential grid_potential(PotentialGrid grid) {
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny * grid.nz;
  if (grid.nx < 2 || grid.ny < 2 || grid.nz < 2 || !(grid.spacing > 0.0) || grid.g0.size() != n ||
      (!grid.gi.empty() && grid.gi.size() != n))
    fail(ErrorKind::ConfigInvalid, "malformed potential grid");

  struct Cell {
    std::size_t idx[8];
    double w[8];
  };
  auto locate = [grid](const Vec3& x) {
    double f[3];
    int i0[3];
    const int dims[3] = {grid.nx, grid.ny, grid.nz};
    for (int a = 0; a < 3; ++a) {
      double s = (x[a] - grid.origin[a]) / grid.spacing;
      if (!(s >= 0.0 && s <= dims[a] - 1))
        fail(ErrorKind::PotentialOutOfRange, "point outside the tabulated potential");
      int i = std::min(static_cast<int>(s), dims[a] - 2);
      i0[a] = i;
      f[a] = s - i;
    }
    Cell c{};
    int m = 0;
    for (int di = 0; di < 2; ++di)
      for (int dj = 0; dj < 2; ++dj)
        for (int dk = 0; dk < 2; ++dk, ++m) {
          c.idx[m] = (static_cast<std::size_t>(i0[0] + di) * grid.ny + (i0[1] + dj)) * grid.nz +
                     (i0[2] + dk);
          c.w[m] = (di ? f[0] : 1 - f[0]) * (dj ? f[1] : 1 - f[1]) * (dk ? f[2] : 1 - f[2]);
        }
    return c;
  };

  FourPotential p;
  p.g0 = [grid, locate](const Vec3& x) {
    Cell c = locate(x);
    double v = 0.0;
    for (int m = 0; m < 8; ++m) v += c.w[m] * grid.g0[c.idx[m]];
    return v;
  };
  p.gi = [grid, locate](const Vec3& x) {
    if (grid.gi.empty()) return Vec3{};
    Cell c = locate(x);
    Vec3 v;
    for (int m = 0; m < 8; ++m) v += c.w[m] * grid.gi[c.idx[m]];
    return v;
  };
  return p;
}

FourPotential potential_preset(std::string_view name, const PresetParameters& params) {
  if (name == "central") return central_potential(params.r_o);
  if (name == "rotating-central") return rotating_central_potential(params.r_o, params.k, params.omega);
  if (name == "custom-grid") return grid_potential(params.grid);
  fail(ErrorKind::ConfigInvalid, "unknown potential preset '" + std::string(name) + "'");
}

SpacetimeMetric build_metric(const PotentialValue& value) {
  const double G0 = value.g0;
  const Vec3& G = value.gi;
  if (!std::isfinite(G0) || !std::isfinite(G.x) || !std::isfinite(G.y) || !std::isfinite(G.z))
    fail(ErrorKind::PotentialOutOfRange, "non-finite potential");
  if (!(G0 < 1.0)) fail(ErrorKind::PotentialOutOfRange, "g0 = " + std::to_string(G0) + " >= 1");

  SpacetimeMetric m{};
  const double a = 1.0 / (1.0 - G0);
  m.tetrad[0][0] = a;
  for (int i = 0; i < 3; ++i) {
    m.tetrad[0][i + 1] = a * G[i];
    m.tetrad[i + 1][i + 1] = 1.0;
  }

  // g_{mu nu} = e^(0)_mu e^(0)_nu - sum_b e^(b)_mu e^(b)_nu
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double s = m.tetrad[0][mu] * m.tetrad[0][nu];
      for (int b = 1; b < 4; ++b) s -= m.tetrad[b][mu] * m.tetrad[b][nu];
      m.g[mu][nu] = s;
    }

  const double one_minus = 1.0 - G0;
  m.ginv[0][0] = one_minus * one_minus - dot(G, G);
  for (int i = 0; i < 3; ++i) {
    m.ginv[0][i + 1] = G[i];
    m.ginv[i + 1][0] = G[i];
    for (int j = 0; j < 3; ++j) m.ginv[i + 1][j + 1] = (i == j) ? -1.0 : 0.0;
  }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m.gamma[i][j] = m.g[0][i + 1] * m.g[0][j + 1] / m.g[0][0] - m.g[i + 1][j + 1];
  return m;
}

SpacetimeMetric build_metric(const FourPotential& potential, const Vec3& at) {
  return build_metric(potential.at(at));
}

FourPotential gauge_shift(const FourPotential& potential, std::function<double(const Vec3&)> phi,
                          double step) {
  FourPotential out = potential;
  if (potential.gauge) {
    auto prev = potential.gauge;
    out.gauge = [prev, phi](const Vec3& x) { return prev(x) + phi(x); };
  } else {
    out.gauge = std::move(phi);
  }
  out.gauge_step = step;
  return out;
}

Connection christoffels(const FourPotential& potential, const Vec3& at, double step) {
  const double h = fd_step(step, at);
  const SpacetimeMetric m0 = build_metric(potential, at);

  // dg[k][mu][nu] = d_k g_{mu nu}, index k over 0..3 with d_0 = 0.
  std::array<Mat4, 4> dg{};
  for (int k = 0; k < 3; ++k) {
    Vec3 p = at, q = at;
    p[k] += h;
    q[k] -= h;
    const Mat4 gp = build_metric(potential, p).g;
    const Mat4 gq = build_metric(potential, q).g;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) dg[k + 1][mu][nu] = (gp[mu][nu] - gq[mu][nu]) / (2.0 * h);
  }

  Connection c{};
  for (int l = 0; l < 4; ++l)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu; nu < 4; ++nu) {
        double s = 0.0;
        for (int sg = 0; sg < 4; ++sg)
          s += m0.ginv[l][sg] * (dg[mu][sg][nu] + dg[nu][sg][mu] - dg[sg][mu][nu]);
        c[l][mu][nu] = c[l][nu][mu] = 0.5 * s;
      }
  return c;
}

Connection ChristoffelSet::full() const {
  Connection c{};
  auto set = [&c](int l, int a, int b, double v) { c[l][a][b] = c[l][b][a] = v; };
  set(1, 0, 0, r_tt);
  set(0, 0, 1, t_tr);
  set(1, 1, 1, r_rr);
  set(1, 2, 2, r_thth);
  set(1, 3, 3, r_phph);
  set(2, 1, 2, th_rth);
  set(3, 1, 3, ph_rph);
  set(2, 3, 3, th_phph);
  set(3, 3, 2, ph_phth);
  return c;
}

ChristoffelSet christoffels_central(double r_o, double r, double theta) {
  if (!(r > 0.0)) fail(ErrorKind::NonPositiveRadius, "r must be positive");
  const double s = std::sin(theta), c = std::cos(theta);
  const double q = 1.0 + r_o / r;
  ChristoffelSet g;
  g.r_tt = (r_o / (r * r)) / (q * q * q);
  g.t_tr = r_o / (r * (r + r_o));
  g.r_thth = -r;
  g.r_phph = -r * s * s;
  g.th_rth = 1.0 / r;
  g.ph_rph = 1.0 / r;
  g.th_phph = -s * c;
  g.ph_phth = c / s;
  return g;
}

ProperTimeRate proper_time_rate(double l, double r_o_over_r, double energy_ratio, double tol) {
  if (!(l >= 0.0 && l < 1.0)) fail(ErrorKind::InvalidSpeed, "coordinate speed must lie in [0, 1)");
  if (!(r_o_over_r >= 0.0) || !std::isfinite(r_o_over_r))
    fail(ErrorKind::NonPositiveRadius, "r_o/r must be finite and non-negative");
  const double k = r_o_over_r * energy_ratio;
  double X = 1.0;
  for (int it = 1; it <= 200; ++it) {
    const double ratio = l / X;
    if (!(ratio < 1.0)) fail(ErrorKind::InvalidSpeed, "iterate reached the light-speed bound");
    const double next = 1.0 - k * std::sqrt(1.0 - ratio * ratio);
    if (!(next > 0.0)) fail(ErrorKind::NoConvergence, "time rate iterate left (0, 1]");
    if (std::abs(next - X) < tol) return {next, it};
    X = next;
  }
  fail(ErrorKind::NoConvergence, "time rate iteration did not settle in 200 steps");
}

}  // namespace flatspace
