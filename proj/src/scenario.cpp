#include "flatspace/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "flatspace/errors.hpp"
#include "flatspace/units.hpp"

namespace flatspace {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::ConfigInvalid, what);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

// Mercury orbital elements: mean semi-major axis and eccentricity from the
// standard planetary ephemeris (J2000 mean elements, rounded).
constexpr double kMercuryA = 5.79e10;
constexpr double kMercuryE = 0.2056;
// G M_sun / c^2.
constexpr double kSunFieldRadius = 1476.6;

// Sun, Earth and Mercury light-path geometry (mean distances) and solar radius.
constexpr double kSolarRo = 1480.0;
constexpr double kSolarRadius = 0.7e9;
constexpr double kEarthSun = 149.5e9;
constexpr double kMercurySun = 57.9e9;

// Earth: mass, mean radius, sidereal spin rate; polar orbit at 642 km altitude.
constexpr double kEarthMass = 5.972e24;
constexpr double kEarthRadius = 6.371e6;
constexpr double kEarthSpin = 7.292e-5;
constexpr double kPolarOrbit = 7.027e6;

// Electron energy radius G m_o (m).
constexpr double kElectronRadius = 7e-58;

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {"orbit",   "precession", "light-deflect", "echo-delay",
                                                "gyro",    "density",    "electric",      "compare"};
  return cmds;
}

std::string default_preset(const std::string& command) {
  if (command == "orbit" || command == "precession" || command == "compare") return "mercury";
  if (command == "light-deflect" || command == "echo-delay" || command == "density") return "solar";
  if (command == "gyro") return "earth-gpb";
  if (command == "electric") return "electron";
  fail(ErrorKind::ConfigInvalid, "unknown command '" + command + "'");
}

Scenario preset_scenario(const std::string& preset, const std::string& command) {
  Scenario s;
  s.name = preset;
  s.command = command;
  s.r_o = kSolarRo;
  s.semi_major_axis = kMercuryA;
  s.eccentricity = kMercuryE;
  s.grazing_radius = kSolarRadius;
  s.r_es = kEarthSun;
  s.r_ms = kMercurySun;
  s.r_over_ro = {0.5, 1.0, 2.0, 9.0, 100.0};

  if (preset == "solar") {
    // defaults above
  } else if (preset == "mercury") {
    s.r_o = kSunFieldRadius;
  } else if (preset == "strong-field") {
    s.r_o = kSunFieldRadius;
    s.semi_major_axis = 0.0;
    s.eccentricity = 0.0;
    s.r_min = 20.0 * s.r_o;
    s.r_max = 60.0 * s.r_o;
    s.grazing_radius = 20.0 * s.r_o;
    s.r_es = 1e6 * s.r_o;
    s.r_ms = 1e6 * s.r_o;
  } else if (preset == "earth-gpb") {
    s.body_mass = kEarthMass;
    s.body_radius = kEarthRadius;
    s.body_spin = {0.0, 0.0, kEarthSpin};
    s.orbit_radius = kPolarOrbit;
    s.orbit_normal = {0.0, 1.0, 0.0};
    s.spin_direction = {0.0, 0.0, 1.0};
    s.r_o = units::field_radius(kEarthMass);
  } else if (preset == "electron") {
    s.r_e = kElectronRadius;
    s.r_o = kElectronRadius;
    s.charge = -1.0;
    s.r_over_ro = {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0};
  } else {
    fail(ErrorKind::ConfigInvalid, "unknown preset '" + preset + "'");
  }
  return s;
}

void Scenario::validate() const {
  const auto& cmds = known_commands();
  require(!name.empty(), "scenario name must not be empty");
  require(std::find(cmds.begin(), cmds.end(), command) != cmds.end(), "unknown command '" + command + "'");
  require(positive(tol) && tol <= 1e-3, "tol must lie in (0, 1e-3]");
  require(r_o >= 0.0 && std::isfinite(r_o), "r_o_m must be finite and non-negative");

  if (command == "orbit" || command == "precession" || command == "compare") {
    require(n_orbits >= 1 && n_orbits <= 100000, "n_orbits must lie in [1, 100000]");
    if (semi_major_axis > 0.0) {
      require(std::isfinite(semi_major_axis), "semi_major_axis_m must be finite");
      require(eccentricity >= 0.0 && eccentricity < 1.0, "eccentricity must lie in [0, 1)");
    } else {
      require(positive(r_min) && positive(r_max) && r_max > r_min,
              "need semi_major_axis_m > 0 or 0 < r_min_m < r_max_m");
    }
  }
  if (command == "light-deflect" || command == "echo-delay" || command == "compare") {
    require(positive(grazing_radius), "grazing_radius_m must be positive");
    require(positive(r_es) && positive(r_ms), "r_es_m and r_ms_m must be positive");
    require(grazing_radius <= std::min(r_es, r_ms), "grazing_radius_m must not exceed r_es_m, r_ms_m");
  }
  if (command == "gyro") {
    require(positive(body_mass) && positive(body_radius), "body_mass_kg and body_radius_m must be positive");
    require(positive(orbit_radius), "orbit_radius_m must be positive");
    require(norm(orbit_normal) > 0.0, "orbit_normal must be non-zero");
    require(norm(spin_direction) > 0.0, "spin_direction must be non-zero");
  }
  if (command == "density" || command == "electric") {
    require(!r_over_ro.empty(), "r_over_ro must not be empty");
    for (double x : r_over_ro) require(positive(x), "r_over_ro values must be positive");
    require(positive(r_o), "r_o_m must be positive for density profiles");
  }
  if (command == "electric") require(positive(r_e), "r_e_m must be positive");
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

Vec3 json_vec(const nlohmann::json& j, const std::string& key) {
  require(j.is_array() && j.size() == 3, key + " must be an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    require(j[i].is_number(), key + " must be an array of 3 numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

}  // namespace

nlohmann::json to_json(const Scenario& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["command"] = s.command;
  j["model"] = std::string(to_string(s.model));
  j["tol"] = s.tol;
  j["r_o_m"] = s.r_o;
  j["semi_major_axis_m"] = s.semi_major_axis;
  j["eccentricity"] = s.eccentricity;
  j["r_min_m"] = s.r_min;
  j["r_max_m"] = s.r_max;
  j["n_orbits"] = s.n_orbits;
  j["grazing_radius_m"] = s.grazing_radius;
  j["r_es_m"] = s.r_es;
  j["r_ms_m"] = s.r_ms;
  j["observer_correction"] = s.observer_correction;
  j["body_mass_kg"] = s.body_mass;
  j["body_radius_m"] = s.body_radius;
  j["body_spin_rad_s"] = vec_json(s.body_spin);
  j["orbit_radius_m"] = s.orbit_radius;
  j["orbit_normal"] = vec_json(s.orbit_normal);
  j["spin_direction"] = vec_json(s.spin_direction);
  j["r_over_ro"] = s.r_over_ro;
  j["charge_e"] = s.charge;
  j["r_e_m"] = s.r_e;
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j, Scenario base) {
  require(j.is_object(), "config must be a JSON object");
  if (j.contains("preset")) {
    require(j["preset"].is_string(), "preset must be a string");
    std::string command = base.command;
    if (j.contains("command") && j["command"].is_string()) command = j["command"].get<std::string>();
    base = preset_scenario(j["preset"].get<std::string>(), command);
  }
  Scenario s = base;

  static const std::set<std::string> known = {
      "preset", "name", "command", "model", "tol", "r_o_m", "semi_major_axis_m", "eccentricity",
      "r_min_m", "r_max_m", "n_orbits", "grazing_radius_m", "r_es_m", "r_ms_m", "observer_correction",
      "body_mass_kg", "body_radius_m", "body_spin_rad_s", "orbit_radius_m", "orbit_normal",
      "spin_direction", "r_over_ro", "charge_e", "r_e_m"};
  for (auto it = j.begin(); it != j.end(); ++it)
    require(known.count(it.key()) == 1, "unknown config key '" + it.key() + "'");

  auto num = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    require(j[key].is_number(), std::string(key) + " must be a number");
    out = j[key].get<double>();
  };
  auto str = [&](const char* key, std::string& out) {
    if (!j.contains(key)) return;
    require(j[key].is_string(), std::string(key) + " must be a string");
    out = j[key].get<std::string>();
  };

  str("name", s.name);
  str("command", s.command);
  if (j.contains("model")) {
    require(j["model"].is_string(), "model must be a string");
    s.model = model_from_string(j["model"].get<std::string>());
  }
  num("tol", s.tol);
  num("r_o_m", s.r_o);
  num("semi_major_axis_m", s.semi_major_axis);
  num("eccentricity", s.eccentricity);
  num("r_min_m", s.r_min);
  num("r_max_m", s.r_max);
  // Turning points given without elements replace the inherited elements.
  if ((j.contains("r_min_m") || j.contains("r_max_m")) && !j.contains("semi_major_axis_m")) {
    s.semi_major_axis = 0.0;
    s.eccentricity = 0.0;
  }
  if (j.contains("n_orbits")) {
    require(j["n_orbits"].is_number_integer(), "n_orbits must be an integer");
    s.n_orbits = j["n_orbits"].get<int>();
  }
  num("grazing_radius_m", s.grazing_radius);
  num("r_es_m", s.r_es);
  num("r_ms_m", s.r_ms);
  if (j.contains("observer_correction")) {
    require(j["observer_correction"].is_boolean(), "observer_correction must be a boolean");
    s.observer_correction = j["observer_correction"].get<bool>();
  }
  num("body_mass_kg", s.body_mass);
  num("body_radius_m", s.body_radius);
  if (j.contains("body_spin_rad_s")) s.body_spin = json_vec(j["body_spin_rad_s"], "body_spin_rad_s");
  num("orbit_radius_m", s.orbit_radius);
  if (j.contains("orbit_normal")) s.orbit_normal = json_vec(j["orbit_normal"], "orbit_normal");
  if (j.contains("spin_direction")) s.spin_direction = json_vec(j["spin_direction"], "spin_direction");
  if (j.contains("r_over_ro")) {
    require(j["r_over_ro"].is_array(), "r_over_ro must be an array");
    s.r_over_ro.clear();
    for (const auto& v : j["r_over_ro"]) {
      require(v.is_number(), "r_over_ro must hold numbers");
      s.r_over_ro.push_back(v.get<double>());
    }
  }
  num("charge_e", s.charge);
  num("r_e_m", s.r_e);
  return s;
}

}  // namespace flatspace
