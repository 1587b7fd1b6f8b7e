// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "flatspace/errors.hpp"
#include "flatspace/metric_core.hpp"
#include "flatspace/radial_carrier_fields.hpp"
#include "flatspace/runner.hpp"
#include "flatspace/scenario.hpp"
#include "flatspace/spin_transport.hpp"
#include "flatspace/units.hpp"

using namespace flatspace;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && dt > budget_s) {
    o.pass = false;
    o.detail += " (over time budget)";
  }
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str(), dt);
}

double value(const RunReport& r, const std::string& q, const std::string& model = {}) {
  const ResultRow* row = r.find(q, model);
  if (!row) fail(ErrorKind::ConfigInvalid, "missing result " + q);
  return row->value;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "radar echo delay", 1.0, [] {
    const RunReport r = run_scenario(preset_scenario("solar", "echo-delay"));
    const double q = value(r, "delay_us"), cf = value(r, "delay_closed_form_us");
    const bool ok = rel(q, 220.0) < 0.02 && rel(cf, 220.0) < 0.02 && rel(q, cf) < 0.02;
    return Outcome{ok, fmt("quadrature %.4f us, closed form %.4f us", q, cf)};
  });

  criterion(2, "light deflection", 1.0, [] {
    const RunReport r = run_scenario(preset_scenario("solar", "light-deflect"));
    const double a = -value(r, "deflection_quadrature_arcsec");
    const double b = -value(r, "deflection_ray_ode_arcsec");
    const double c = -value(r, "deflection_closed_form_arcsec");
    const bool ok = rel(a, 1.75) < 0.01 && rel(b, 1.75) < 0.01 && rel(c, 1.75) < 0.01 && rel(a, b) < 0.01 &&
                    rel(a, c) < 0.01 && rel(b, c) < 0.01;
    return Outcome{ok, fmt("integral %.5f\", ray %.5f\", closed form %.5f\"", -a, -b, -c)};
  });

  criterion(3, "perihelion precession", 10.0, [] {
    Scenario s = preset_scenario("mercury", "precession");
    s.n_orbits = 10;
    const RunReport r = run_scenario(s);
    const double num = value(r, "precession_per_orbit");
    const double ana = value(r, "precession_weak_field_formula");
    const double century = value(r, "precession_per_century");
    const bool ok = rel(num, ana) < 5e-3 && std::abs(century - 42.9) <= 0.5;
    return Outcome{ok, fmt("numeric %.6e rad/orbit, analytic %.6e, %.3f\"/century", num, ana, century)};
  });

  {
    Scenario s = preset_scenario("mercury", "precession");
    const RunReport r = run_scenario(s);
    std::printf("INFO [ 3] geodesic first-integral system alone: %.6e rad/orbit (closed form %.6e), %.4f of the "
                "weak-field value\n",
                value(r, "precession_geodesic_system"), value(r, "precession_geodesic_system_exact"),
                value(r, "precession_geodesic_system") / value(r, "precession_weak_field_formula"));
  }

  criterion(4, "energy normalization", 0.0, [] {
    const RadialCarrier c{1480.0, units::G, {}};
    const EnclosedEnergy total = enclosed_energy(c, std::numeric_limits<double>::infinity());
    const double expect = c.r_o / units::G;
    const double half = enclosed_energy(c, c.r_o).quadrature / expect;
    const bool ok = rel(total.quadrature, expect) < 1e-8 && std::abs(half - 0.5) < 1e-12;
    return Outcome{ok, fmt("E(inf) rel err %.2e, fraction at r_o %.16f", rel(total.quadrature, expect), half)};
  });

  criterion(5, "density equality", 0.0, [] {
    const RadialCarrier c{1480.0, units::G, {}};
    double worst = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double r = c.r_o * std::pow(10.0, -3.0 + 9.0 * i / 999.0);
      const DensityResiduals d1 = density_identities(c, r, 1e-2 * r);
      const DensityResiduals d2 = density_identities(c, r, 0.5e-2 * r);
      worst = std::max(worst, d1.active_passive / d1.eps);
      if (i % 111 == 0) {
        const double ratio = d1.fd_divergence / d2.fd_divergence;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
      }
    }
    const bool ok = worst < 1e-12 && ratio_lo > 3.8 && ratio_hi < 4.2;
    return Outcome{ok, fmt("max |eps_a - eps_p|/eps %.2e, Richardson ratios %.4f..%.4f", worst, ratio_lo, ratio_hi)};
  });

  criterion(6, "spatial flatness", 0.0, [] {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> g0(-1.0, 0.6), gi(-0.5, 0.5), pos(-5.0, 5.0);
    double worst_gamma = 0.0, worst_inv = 0.0;
    auto check = [&](const SpacetimeMetric& m) {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double s = 0.0;
          for (int k = 0; k < 4; ++k) s += m.g[i][k] * m.ginv[k][j];
          worst_inv = std::max(worst_inv, std::abs(s - (i == j)));
          if (i < 3 && j < 3) worst_gamma = std::max(worst_gamma, std::abs(m.gamma[i][j] - (i == j)));
        }
    };
    for (int n = 0; n < 1000; ++n) {
      check(build_metric(PotentialValue{g0(rng), {gi(rng), gi(rng), gi(rng)}}));
      const double a = gi(rng), b = gi(rng);
      const FourPotential shifted = gauge_shift(rotating_central_potential(0.2, 0.1, {0.0, a, 1.0}),
                                                [=](const Vec3& x) { return a * x.x * x.z + b * std::cos(x.y); });
      Vec3 at{pos(rng), pos(rng), pos(rng)};
      if (norm(at) < 1.0) at = at + Vec3{0.0, 0.0, 2.0};
      check(build_metric(shifted, at));
    }
    return Outcome{worst_gamma < 1e-12 && worst_inv < 1e-12,
                   fmt("max|gamma - delta| %.2e, max|g ginv - I| %.2e", worst_gamma, worst_inv)};
  });

  criterion(7, "spin transport", 0.0, [] {
    const RunReport r = run_scenario(preset_scenario("earth-gpb", "gyro"));
    const double mismatch = value(r, "rotation_relative_mismatch");
    const Scenario s = r.config;
    const double r_o = units::field_radius(s.body_mass);
    const RotatingFieldSpec spec{r_o, 0.4 * r_o * s.body_radius * s.body_radius, s.body_spin / units::c};
    const double R = s.orbit_radius, w = norm(spec.omega), base = spec.k * w / (R * R * R);
    const Vec3 wh = spec.omega / w;
    const double eq = dot(precession_rates(spec, {R, 0.0, 0.0}, {}).frame_dragging, wh);
    const double pole = dot(precession_rates(spec, R * wh, {}).frame_dragging, wh);
    const bool ok = mismatch < 0.01 && rel(eq, -base) < 1e-14 && rel(pole, 2.0 * base) < 1e-14;
    return Outcome{ok, fmt("numeric vs integrated rates %.2e, equatorial %.6e (-GIw/r^3 %.6e), polar/equatorial %.15f",
                           mismatch, eq, -base, pole / eq)};
  });

  criterion(8, "fixed-point time rate", 0.0, [] {
    double worst = 0.0;
    int most = 0;
    for (int i = 0; i <= 200; ++i) {
      const double k = 0.5 * std::pow(10.0, -8.0 * (200 - i) / 200.0);
      const double E = 1.0 / std::sqrt(1.0 + k), l = std::sqrt(k) / std::pow(1.0 + k, 1.5);
      const ProperTimeRate p = proper_time_rate(l, k, E);
      worst = std::max(worst, std::abs(p.rate - 1.0 / (1.0 + k)));
      most = std::max(most, p.iterations);
    }
    return Outcome{worst < 1e-12 && most <= 50, fmt("max error %.2e, max iterations %.0f", worst, most)};
  });

  criterion(9, "electric analog", 0.0, [] {
    const ElectricCarrier c{};
    const ElectricTotals t = electric_totals(c);
    const double e1 = rel(t.charge, c.e), e2 = rel(t.charge_inside_ro, 0.5 * c.e);
    const double e3 = std::max({rel(t.self_energy_potential, c.e * c.e / c.r_e),
                                rel(t.self_energy_field, c.e * c.e / c.r_e),
                                rel(t.self_energy_constant, c.e * c.e / c.r_e)});
    return Outcome{std::max({e1, e2, e3}) < 1e-8,
                   fmt("charge %.1e, half-charge %.1e, self-energy %.1e (relative errors)", e1, e2, e3)};
  });

  criterion(10, "baseline property", 0.0, [] {
    const RunReport weak = run_scenario(preset_scenario("mercury", "compare"));
    double worst = 0.0;
    for (const char* q : {"precession_relative_difference", "deflection_relative_difference",
                          "delay_relative_difference"})
      worst = std::max(worst, value(weak, q));
    const RunReport strong = run_scenario(preset_scenario("strong-field", "compare"));
    const double diff = value(strong, "precession_relative_difference");
    return Outcome{worst < 1e-3 && diff > 0.01,
                   fmt("weak field max relative difference %.2e; at r_min = 20 r_o %.4f vs %.4f rad/orbit (%.1f%%)",
                       worst, value(strong, "precession", "flatspace-weber"),
                       value(strong, "precession", "schwarzschild"), 100.0 * diff)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
