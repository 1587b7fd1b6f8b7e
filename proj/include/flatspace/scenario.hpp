#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatspace/model.hpp"
#include "flatspace/vec.hpp"

namespace flatspace {

// One run of the harness. Lengths in m, times in s, angles in rad.
struct Scenario {
  std::string name = "custom";
  std::string command = "orbit";
  Model model = Model::flatspace_weber;
  double tol = 1e-10;

  double r_o = 1480.0;  // m, G M / c^2 of the central body

  // orbit, precession
  double semi_major_axis = 0.0;   // m
  double eccentricity = 0.0;
  double r_min = 0.0;             // m, used when semi_major_axis is zero
  double r_max = 0.0;             // m
  int n_orbits = 10;

  // light-deflect, echo-delay
  double grazing_radius = 0.0;    // m
  double r_es = 0.0;              // m
  double r_ms = 0.0;              // m
  bool observer_correction = false;

  // gyro
  double body_mass = 0.0;         // kg
  double body_radius = 0.0;       // m
  Vec3 body_spin;                 // rad/s
  double orbit_radius = 0.0;      // m
  Vec3 orbit_normal{0.0, 1.0, 0.0};
  Vec3 spin_direction{0.0, 0.0, 1.0};

  // density, electric
  std::vector<double> r_over_ro;
  double charge = -1.0;           // units of the elementary charge
  double r_e = 0.0;               // m

  // Throws ConfigInvalid.
  void validate() const;
};

// Presets: solar, mercury, strong-field, earth-gpb, electron.
// Throws ConfigInvalid on unknown names.
Scenario preset_scenario(const std::string& preset, const std::string& command);
std::string default_preset(const std::string& command);
const std::vector<std::string>& known_commands();

nlohmann::json to_json(const Scenario& s);
// Missing keys keep their defaults. Throws ConfigInvalid on type or key errors.
Scenario scenario_from_json(const nlohmann::json& j, Scenario base = {});

}  // namespace flatspace
