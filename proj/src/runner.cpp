#include "flatspace/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "flatspace/baseline.hpp"
#include "flatspace/errors.hpp"
#include "flatspace/massive_geodesics.hpp"
#include "flatspace/photon_propagation.hpp"
#include "flatspace/radial_carrier_fields.hpp"
#include "flatspace/spin_transport.hpp"
#include "flatspace/units.hpp"

#ifndef FLATSPACE_VERSION
#define FLATSPACE_VERSION "dev"
#endif

namespace flatspace {

namespace {

constexpr double two_pi = 2.0 * units::pi;

struct Builder {
  RunReport& rep;
  std::string model;

  void add(const std::string& quantity, double value, const std::string& unit, double tol,
           const std::string& provenance, const std::string& reference = {}) {
    rep.results.push_back({rep.config.name, model, quantity, value, unit, tol, provenance, reference});
  }
};

struct Elements {
  double r_min, r_max, a, e;
};

Elements elements_of(const Scenario& s) {
  if (s.semi_major_axis > 0.0)
    return {s.semi_major_axis * (1.0 - s.eccentricity), s.semi_major_axis * (1.0 + s.eccentricity),
            s.semi_major_axis, s.eccentricity};
  return {s.r_min, s.r_max, 0.5 * (s.r_min + s.r_max), (s.r_max - s.r_min) / (s.r_max + s.r_min)};
}

std::string label(double x) { return format_number(x); }

void run_orbit(const Scenario& s, RunReport& rep, bool with_trajectory) {
  const Elements el = elements_of(s);
  const Model m = s.model;
  Builder b{rep, std::string(to_string(m))};

  const OrbitSetup o = (m == Model::flatspace_weber && s.semi_major_axis > 0.0)
                           ? orbit_from_elements(s.r_o, el.a, el.e)
                           : orbit_from_turning_points(m, s.r_o, el.r_min, el.r_max);
  const Trajectory tr = integrate_orbit(m, s.r_o, o.state, o.integrals, s.n_orbits, s.tol);
  const double period = kepler_period_seconds(s.r_o, el.a);
  const PrecessionResult geo = with_century_rate(precession_numeric(tr), period);

  if (m == Model::flatspace_weber) {
    const RosetteSetup rs = rosette_from_elements(s.r_o, el.a, el.e);
    const RosetteTrajectory rt = integrate_rosette(s.r_o, rs.L, rs.u, rs.du, s.n_orbits, s.tol);
    const PrecessionResult ros = with_century_rate(precession_numeric(rt), period);
    b.add("precession_per_orbit", ros.per_orbit_rad, "rad", s.tol, "numeric: rosette equation");
    b.add("precession_per_century", ros.arcsec_per_century, "arcsec/century", s.tol,
          "numeric: rosette equation, Kepler period");
    b.add("precession_geodesic_system", geo.per_orbit_rad, "rad", s.tol,
          "numeric: geodesic first integrals");
    b.add("precession_geodesic_system_exact", precession_geodesic_exact(s.r_o, o.integrals.J_phi), "rad", 0.0,
          "closed-form");
    rep.notes.push_back(
        "precession_per_orbit integrates the weak-field rosette equation; the geodesic first-integral "
        "system alone advances the perihelion by 2 pi (1/sqrt(1 - r_o^2/J^2) - 1), reported separately");
  } else {
    b.add("precession_per_orbit", geo.per_orbit_rad, "rad", s.tol, "numeric: geodesic");
    b.add("precession_per_century", geo.arcsec_per_century, "arcsec/century", s.tol,
          "numeric: geodesic, Kepler period");
  }
  b.add("precession_quadrature", precession_quadrature(m, s.r_o, o.integrals), "rad", 1e-14,
        "quadrature: turning points");
  b.add("precession_weak_field_formula", precession_analytic(s.r_o, el.a, el.e), "rad", 0.0, "closed-form");
  b.add("orbital_period", period, "s", 0.0, "closed-form: Kepler");
  b.add("orbits_integrated", geo.orbits, "1", 0.0, "numeric");
  b.add("energy_ratio", o.integrals.energy_ratio, "1", 0.0, "closed-form");
  b.add("J_phi", o.integrals.J_phi, "m", 0.0, "closed-form");
  b.add("max_constraint_residual", tr.max_residual, "1", s.tol, "numeric");
  b.add("max_constraint_drift", tr.max_drift, "1", s.tol, "numeric");

  if (with_trajectory) {
    Table t{"trajectory", {"p_m", "t_m", "r_m", "phi_rad", "residual", "drift"}, {}};
    for (const auto& smp : tr.samples)
      t.rows.push_back({smp.state.p, smp.state.t, smp.state.r, smp.state.phi, smp.residual, smp.drift});
    rep.tables.push_back(std::move(t));
  } else {
    Table t{"perihelia", {"index", "phi_rad"}, {}};
    for (std::size_t i = 0; i < geo.perihelion_phi.size(); ++i)
      t.rows.push_back({static_cast<double>(i), geo.perihelion_phi[i]});
    rep.tables.push_back(std::move(t));
  }
}

void run_light_deflect(const Scenario& s, RunReport& rep) {
  Builder b{rep, "flatspace-weber"};
  const Deflection d = deflection_integral(s.r_o, s.grazing_radius);
  const double ray_tol = std::min(s.tol, 1e-12);
  const RayResult ray = fermat_ray_integrate(ray_launch(1.0 / s.grazing_radius), s.r_o, ray_tol);
  const double as = units::arcsec_per_rad;
  b.add("deflection_quadrature", d.quadrature, "rad", 1e-13, "quadrature");
  b.add("deflection_quadrature_arcsec", d.quadrature * as, "arcsec", 1e-13, "quadrature");
  b.add("deflection_ray_ode", ray.deflection, "rad", ray_tol, "numeric: ray equation");
  b.add("deflection_ray_ode_arcsec", ray.deflection * as, "arcsec", ray_tol, "numeric: ray equation");
  b.add("deflection_closed_form", d.closed_form, "rad", 0.0, "closed-form");
  b.add("deflection_closed_form_arcsec", d.closed_form * as, "arcsec", 0.0, "closed-form");
  b.add("ray_invariant_max_residual", ray.max_invariant_residual, "1", ray_tol, "numeric");
  if (s.model != Model::flatspace_weber) {
    Builder bm{rep, std::string(to_string(s.model))};
    const double v = model_observable(s.model, Quantity::deflection, s);
    bm.add("deflection", v, "rad", 1e-13, "baseline");
    bm.add("deflection_arcsec", v * as, "arcsec", 1e-13, "baseline");
  }
  Table t{"ray", {"phi_rad", "u_per_m", "du_dphi_per_m", "invariant_residual"}, {}};
  for (const auto& r : ray.trajectory) t.rows.push_back({r.phi, r.u, r.du, r.invariant_residual});
  rep.tables.push_back(std::move(t));
}

void run_echo_delay(const Scenario& s, RunReport& rep) {
  Builder b{rep, "flatspace-weber"};
  const ShapiroDelay d = shapiro_delay({s.r_es, s.r_ms, s.grazing_radius, s.r_o});
  const double headline = s.observer_correction ? d.observer : d.quadrature;
  b.add("delay", units::to_seconds(headline), "s", 1e-12,
        s.observer_correction ? "quadrature, Earth observer time" : "quadrature");
  b.add("delay_us", units::to_seconds(headline) * 1e6, "us", 1e-12,
        s.observer_correction ? "quadrature, Earth observer time" : "quadrature");
  b.add("delay_quadrature", units::to_seconds(d.quadrature), "s", 1e-12, "quadrature");
  b.add("delay_closed_form", units::to_seconds(d.closed_form), "s", 0.0, "closed-form");
  b.add("delay_closed_form_us", units::to_seconds(d.closed_form) * 1e6, "us", 0.0, "closed-form");
  b.add("delay_observer", units::to_seconds(d.observer), "s", 1e-12, "quadrature, Earth observer time");
  if (s.model != Model::flatspace_weber) {
    Builder bm{rep, std::string(to_string(s.model))};
    bm.add("delay", units::to_seconds(model_observable(s.model, Quantity::delay, s)), "s", 1e-12, "baseline");
  }
}

OrbitPlane plane_for(const Vec3& normal) {
  const Vec3 n = normal / norm(normal);
  Vec3 seed{0.0, 0.0, 1.0};
  if (norm(cross(n, seed)) < 1e-6) seed = {1.0, 0.0, 0.0};
  Vec3 e1 = cross(n, seed);
  e1 = e1 / norm(e1);
  Vec3 e2 = cross(n, e1);
  e2 = e2 / norm(e2);
  return {e1, e2};
}

void run_gyro(const Scenario& s, RunReport& rep) {
  Builder b{rep, "flatspace-weber"};
  const double r_o = units::field_radius(s.body_mass);
  const RotatingFieldSpec spec{r_o, 0.4 * r_o * s.body_radius * s.body_radius, s.body_spin / units::c};
  const RotatingFieldSpec still{r_o, 0.0, {}};
  const OrbitPlane plane = plane_for(s.orbit_normal);
  const OrbitSetup orbit = circular_orbit(r_o, s.orbit_radius);
  const Vec3 S0 = s.spin_direction / norm(s.spin_direction);

  auto with = std::async(std::launch::async, [&] { return transport_spin(S0, spec, orbit, plane, two_pi, s.tol); });
  auto without = std::async(std::launch::async, [&] { return transport_spin(S0, still, orbit, plane, two_pi, s.tol); });
  const SpinTransportResult res = with.get();
  const SpinTransportResult res0 = without.get();

  const double T = units::to_seconds(res.duration);
  const double per_year = units::seconds_per_year / T * units::mas_per_rad;
  const Vec3 fd_num = res.rotation - res0.rotation;
  const Vec3 fd_pred = res.predicted_rotation - res0.predicted_rotation;
  const char* axes[3] = {"x", "y", "z"};
  const std::string pm = "numeric: point-spin model";
  for (int i = 0; i < 3; ++i) {
    b.add(std::string("rotation_") + axes[i], res.rotation[i], "rad", s.tol, pm);
    b.add(std::string("predicted_rotation_") + axes[i], res.predicted_rotation[i], "rad", s.tol,
          "rates integrated along the orbit: point-spin model");
  }
  b.add("rotation_magnitude", norm(res.rotation), "rad", s.tol, pm);
  b.add("predicted_rotation_magnitude", norm(res.predicted_rotation), "rad", s.tol,
        "rates integrated along the orbit: point-spin model");
  b.add("rotation_relative_mismatch", norm(res.rotation - res.predicted_rotation) / norm(res.predicted_rotation),
        "1", s.tol, "comparison");
  b.add("geodetic_rotation", norm(res0.rotation), "rad", s.tol, pm);
  b.add("geodetic_rate", norm(res0.rotation) * per_year, "mas/yr", s.tol, pm);
  b.add("frame_dragging_rotation", norm(fd_num), "rad", s.tol, pm);
  b.add("frame_dragging_rotation_predicted", norm(fd_pred), "rad", s.tol,
        "rates integrated along the orbit: point-spin model");
  b.add("frame_dragging_rate", norm(fd_num) * per_year, "mas/yr", s.tol, pm);
  b.add("de_sitter_rotation", norm(res.de_sitter_rotation), "rad", s.tol, "rates integrated along the orbit");
  b.add("de_sitter_rate", norm(res.de_sitter_rotation) * per_year, "mas/yr", s.tol,
        "rates integrated along the orbit");
  b.add("orbital_period", T, "s", s.tol, "numeric");
  b.add("spin_norm_drift_nonrotating", res0.max_norm_drift, "1", s.tol, "numeric");

  const double r = s.orbit_radius;
  const Vec3 w_hat = spec.omega / norm(spec.omega);
  Vec3 eq = cross(w_hat, Vec3{1.0, 0.0, 0.0});
  if (norm(eq) < 1e-6) eq = cross(w_hat, Vec3{0.0, 1.0, 0.0});
  eq = (r / norm(eq)) * eq;
  const double to_rad_s = units::c;
  b.add("frame_dragging_rate_equatorial", dot(precession_rates(spec, eq, {}).frame_dragging, w_hat) * to_rad_s,
        "rad/s", 0.0, "closed-form");
  b.add("frame_dragging_rate_polar", dot(precession_rates(spec, r * w_hat, {}).frame_dragging, w_hat) * to_rad_s,
        "rad/s", 0.0, "closed-form");
  rep.notes.push_back("gyro outputs follow the point-spin model");

  Table t{"spin", {"t_s", "x_m", "y_m", "z_m", "S_x", "S_y", "S_z", "S_0", "norm"}, {}};
  for (const auto& st : res.samples)
    t.rows.push_back({units::to_seconds(st.t), st.x.x, st.x.y, st.x.z, st.S.x, st.S.y, st.S.z, st.S0, st.norm});
  rep.tables.push_back(std::move(t));
}

void run_density(const Scenario& s, RunReport& rep) {
  Builder b{rep, "flatspace-weber"};
  const double c4 = units::c * units::c * units::c * units::c;
  const RadialCarrier carrier{s.r_o, units::G / c4, {}};
  const double inf = std::numeric_limits<double>::infinity();
  const EnclosedEnergy total = enclosed_energy(carrier, inf);
  b.add("E_M", total.analytic, "J", 0.0, "closed-form");
  b.add("E_M_quadrature", total.quadrature, "J", 1e-12, "quadrature + analytic tail");

  Table t{"profile", {"r_over_ro", "r_m", "eps_J_per_m3", "w_r_per_m", "W", "enclosed_fraction"}, {}};
  double worst = 0.0;
  for (double x : s.r_over_ro) {
    const double r = x * s.r_o;
    const FieldIntensity f = field_intensity(carrier, r);
    const double frac = enclosed_energy(carrier, r).quadrature / total.analytic;
    const DensityResiduals d = density_identities(carrier, r, 1e-4 * r);
    worst = std::max(worst, d.active_passive / d.eps);
    t.rows.push_back({x, r, energy_density(carrier, r), f.w_r, f.W, frac});
    b.add("enclosed_fraction(r/r_o=" + label(x) + ")", frac, "1", 1e-12, "quadrature");
  }
  b.add("active_passive_max_relative_difference", worst, "1", 0.0, "closed-form");
  rep.tables.push_back(std::move(t));
}

void run_electric(const Scenario& s, RunReport& rep) {
  Builder b{rep, "flatspace-weber"};
  const ElectricCarrier c{s.charge, s.r_e, s.r_o};
  const ElectricTotals tot = electric_totals(c);
  b.add("total_charge", tot.charge, "e", 1e-12, "quadrature");
  b.add("charge_inside_r_o", tot.charge_inside_ro, "e", 1e-12, "quadrature");
  b.add("self_energy_potential_ratio", tot.self_energy_potential / tot.self_energy_closed, "1", 1e-12,
        "quadrature: rho W_e");
  b.add("self_energy_field_ratio", tot.self_energy_field / tot.self_energy_closed, "1", 1e-12,
        "quadrature: E D / 4 pi");
  b.add("self_energy_constant_ratio", tot.self_energy_constant / tot.self_energy_closed, "1", 1e-12,
        "quadrature: rho e / r_e");
  b.add("self_energy", tot.self_energy_closed * units::coulomb_e2, "J", 0.0, "closed-form e^2/r_e");
  b.add("self_force", norm(self_force(c, {s.r_o, 0.0, 0.0})), "e^2/m^2", 0.0, "closed-form");

  Table t{"electric_profile", {"r_over_ro", "rho_scaled", "E_scaled", "D_scaled", "W_scaled", "enclosed_charge_fraction"}, {}};
  for (double x : s.r_over_ro) {
    const double r = x * s.r_o;
    const ElectricProfile p = electric_profile(c, r);
    const double ro3 = s.r_o * s.r_o * s.r_o;
    t.rows.push_back({x, p.rho * ro3 / c.e, p.E_r * c.r_e * s.r_o / c.e, p.D_r * s.r_o * s.r_o / c.e,
                      p.W_e * c.r_e / c.e, enclosed_fraction(s.r_o, r)});
  }
  rep.tables.push_back(std::move(t));
}

void run_compare(const Scenario& s, RunReport& rep) {
  const Model models[3] = {Model::flatspace_weber, Model::schwarzschild, Model::newtonian};
  const Quantity quantities[3] = {Quantity::precession, Quantity::deflection, Quantity::delay};

  std::vector<std::future<double>> jobs;
  for (Quantity q : quantities)
    for (Model m : models) jobs.push_back(std::async(std::launch::async, [=, &s] { return model_observable(m, q, s); }));
  auto geodesic_system = std::async(std::launch::async, [&s] {
    Scenario f = s;
    f.model = Model::flatspace_weber;
    const Elements el = elements_of(f);
    const OrbitSetup o = orbit_from_turning_points(Model::flatspace_weber, f.r_o, el.r_min, el.r_max);
    return precession_numeric(integrate_orbit(Model::flatspace_weber, f.r_o, o.state, o.integrals, f.n_orbits, f.tol))
        .per_orbit_rad;
  });

  std::vector<double> values;
  for (auto& j : jobs) values.push_back(j.get());
  const double geo = geodesic_system.get();

  for (int qi = 0; qi < 3; ++qi) {
    const Quantity q = quantities[qi];
    const std::string unit = q == Quantity::delay ? "s" : (q == Quantity::precession ? "rad" : "rad");
    const double scale = q == Quantity::delay ? 1.0 / units::c : 1.0;
    for (int mi = 0; mi < 3; ++mi) {
      Builder b{rep, std::string(to_string(models[mi]))};
      b.add(std::string(to_string(q)), values[qi * 3 + mi] * scale, unit, s.tol,
            mi == 0 && q == Quantity::precession ? "numeric: rosette equation" : "model");
    }
    const double f = values[qi * 3], sw = values[qi * 3 + 1];
    Builder b{rep, "flatspace-weber"};
    b.add(std::string(to_string(q)) + "_relative_difference", sw != 0.0 ? std::abs(f - sw) / std::abs(sw) : 0.0,
          "1", s.tol, "comparison", "schwarzschild");
  }
  {
    Builder b{rep, "flatspace-weber"};
    b.add("precession_geodesic_system", geo, "rad", s.tol, "numeric: geodesic first integrals");
    const double sw = values[1];
    b.add("precession_geodesic_system_relative_difference", sw != 0.0 ? std::abs(geo - sw) / std::abs(sw) : 0.0,
          "1", s.tol, "comparison", "schwarzschild");
  }
  rep.notes.push_back("flatspace-weber precession uses the weak-field rosette equation");
}

}  // namespace

RunReport run_scenario(const Scenario& s) {
  s.validate();
  RunReport rep;
  rep.tool_version = FLATSPACE_VERSION;
  rep.config = s;
  const std::string& c = s.command;
  if (c == "orbit") run_orbit(s, rep, true);
  else if (c == "precession") run_orbit(s, rep, false);
  else if (c == "light-deflect") run_light_deflect(s, rep);
  else if (c == "echo-delay") run_echo_delay(s, rep);
  else if (c == "gyro") run_gyro(s, rep);
  else if (c == "density") run_density(s, rep);
  else if (c == "electric") run_electric(s, rep);
  else if (c == "compare") run_compare(s, rep);
  else fail(ErrorKind::ConfigInvalid, "unknown command '" + c + "'");
  return rep;
}

RunReport run_scenario(const std::filesystem::path& config) {
  std::ifstream f(config);
  if (!f) fail(ErrorKind::ConfigInvalid, "cannot read config " + config.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
    fail(ErrorKind::ConfigInvalid, "config needs a string 'command'");
  const std::string command = j["command"].get<std::string>();
  Scenario base = preset_scenario(default_preset(command), command);
  return run_scenario(scenario_from_json(j, base));
}

}  // namespace flatspace
