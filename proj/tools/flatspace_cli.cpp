// flatspace command-line front end.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatspace/errors.hpp"
#include "flatspace/report.hpp"
#include "flatspace/runner.hpp"
#include "flatspace/scenario.hpp"

namespace fs = flatspace;

namespace {

struct Options {
  std::string preset;
  std::string config;
  std::string out;
  std::string format = "json";
  std::string name;
  std::string model;
  std::optional<double> tol;
  std::optional<int> orbits;
  std::vector<double> r_over_ro;
  bool observer = false;
};

fs::Scenario build(const std::string& command, const Options& o) {
  fs::Scenario s = fs::preset_scenario(o.preset.empty() ? fs::default_preset(command) : o.preset, command);
  if (!o.config.empty()) {
    std::ifstream f(o.config);
    if (!f) fs::fail(fs::ErrorKind::ConfigInvalid, "cannot read config " + o.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      fs::fail(fs::ErrorKind::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
    }
    s = fs::scenario_from_json(j, s);
  }
  s.command = command;
  if (!o.name.empty()) s.name = o.name;
  if (!o.model.empty()) s.model = fs::model_from_string(o.model);
  if (o.tol) s.tol = *o.tol;
  if (o.orbits) s.n_orbits = *o.orbits;
  if (!o.r_over_ro.empty()) s.r_over_ro = o.r_over_ro;
  if (o.observer) s.observer_correction = true;
  s.validate();
  return s;
}

void emit(const fs::RunReport& rep, const Options& o) {
  if (!o.out.empty()) {
    for (const auto& p : fs::write_report(rep, o.out)) std::cout << p.string() << '\n';
    return;
  }
  if (o.format == "csv") {
    std::cout << fs::results_csv(rep);
    for (const auto& t : rep.tables) std::cout << "\r\n# table " << t.name << "\r\n" << fs::table_csv(t);
  } else {
    std::cout << fs::to_json(rep).dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatspace: flat-space gravitation scenarios"};
  app.set_version_flag("--version", FLATSPACE_VERSION);
  app.require_subcommand(1);

  Options o;
  std::string chosen;
  for (const auto& command : fs::known_commands()) {
    CLI::App* sub = app.add_subcommand(command);
    sub->add_option("--preset", o.preset, "preset name");
    sub->add_option("--config", o.config, "JSON scenario file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory (default: stdout)");
    sub->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", o.tol, "integrator tolerance");
    sub->add_option("--model", o.model, "flatspace-weber | schwarzschild | newtonian");
    sub->add_option("--name", o.name, "scenario name used in output files");
    if (command == "orbit" || command == "precession" || command == "compare")
      sub->add_option("--orbits", o.orbits, "radial periods to integrate");
    if (command == "density" || command == "electric")
      sub->add_option("--r-over-ro", o.r_over_ro, "radii in units of r_o");
    if (command == "echo-delay")
      sub->add_flag("--observer-correction", o.observer, "report the delay in Earth observer time");
    sub->callback([&chosen, command] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const fs::RunReport rep = fs::run_scenario(build(chosen, o));
    emit(rep, o);
  } catch (const fs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fs::is_validation(e.kind()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
