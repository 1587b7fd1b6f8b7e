#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "flatspace/errors.hpp"
#include "flatspace/runner.hpp"
#include "flatspace/scenario.hpp"

using namespace flatspace;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FLATSPACE_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("flatspace_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

double value_of(const nlohmann::json& report, const std::string& quantity, const std::string& model = {}) {
  for (const auto& r : report["results"])
    if (r["quantity"] == quantity && (model.empty() || r["model"] == model)) return r["value"].get<double>();
  FAIL("missing quantity " << quantity);
  return 0.0;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find("\r\n")); }

}  // namespace

TEST_CASE("echo delay from the solar preset") {
  const Run r = run("echo-delay --preset solar");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(value_of(j, "delay_us") == doctest::Approx(220.0).epsilon(0.02));
  CHECK(j["tool"] == "flatspace");
}

TEST_CASE("orbit writes trajectory CSV and results JSON") {
  const fs::path d = scratch("orbit");
  const Run r = run("orbit --preset mercury --orbits 10 --out " + d.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(d / "mercury_orbit_results.json"));
  CHECK(value_of(j, "precession_per_orbit") ==
        doctest::Approx(value_of(j, "precession_weak_field_formula")).epsilon(5e-3));
  CHECK(first_line(slurp(d / "mercury_orbit_trajectory.csv")) == "p_m,t_m,r_m,phi_rad,residual,drift");
  CHECK(first_line(slurp(d / "mercury_orbit_results.csv")) ==
        "scenario,model,quantity,value,unit,tolerance,provenance,reference_model");
}

TEST_CASE("density at r = r_o holds half the energy") {
  const Run r = run("density --r-over-ro 1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(value_of(j, "enclosed_fraction(r/r_o=1)") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("every subcommand writes headed CSV files") {
  const std::map<std::string, std::string> headers = {
      {"trajectory", "p_m,t_m,r_m,phi_rad,residual,drift"},
      {"perihelia", "index,phi_rad"},
      {"ray", "phi_rad,u_per_m,du_dphi_per_m,invariant_residual"},
      {"spin", "t_s,x_m,y_m,z_m,S_x,S_y,S_z,S_0,norm"},
      {"profile", "r_over_ro,r_m,eps_J_per_m3,w_r_per_m,W,enclosed_fraction"},
      {"electric_profile", "r_over_ro,rho_scaled,E_scaled,D_scaled,W_scaled,enclosed_charge_fraction"},
      {"results", "scenario,model,quantity,value,unit,tolerance,provenance,reference_model"}};
  for (const auto& c : known_commands()) {
    CAPTURE(c);
    const fs::path d = scratch("all_" + c);
    REQUIRE(run(c + " --out " + d.string()).code == 0);
    int csv = 0;
    for (const auto& e : fs::directory_iterator(d)) {
      if (e.path().extension() != ".csv") continue;
      ++csv;
      const std::string stem = e.path().stem().string();
      const std::string table = stem.substr(stem.find(c) + c.size() + 1);
      REQUIRE(headers.count(table) == 1);
      CHECK(first_line(slurp(e.path())) == headers.at(table));
    }
    CHECK(csv >= 1);
  }
}

TEST_CASE("identical configs give identical bytes") {
  for (const std::string c : {"orbit", "compare", "gyro"}) {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(run(c + " --out " + a.string()).code == 0);
    REQUIRE(run(c + " --out " + b.string()).code == 0);
    for (const auto& e : fs::directory_iterator(a)) CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
}

TEST_CASE("config echo reproduces the run") {
  const Run first = run("light-deflect --preset strong-field --model schwarzschild");
  REQUIRE(first.code == 0);
  const auto j = nlohmann::json::parse(first.out);
  const fs::path d = scratch("roundtrip");
  std::ofstream(d / "echo.json") << j["config"].dump();
  const Run second = run("light-deflect --config " + (d / "echo.json").string());
  REQUIRE(second.code == 0);
  CHECK(second.out == first.out);

  const RunReport lib = run_scenario(d / "echo.json");
  CHECK(lib.results.size() == j["results"].size());
}

TEST_CASE("exit codes") {
  CHECK(run("orbit --preset no-such-preset").code == 2);
  CHECK(run("orbit --format xml").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("orbit --tol -1").code == 2);
  CHECK(run("--help").code == 0);

  const fs::path d = scratch("codes");
  std::ofstream(d / "bad.json") << "{\"command\": \"orbit\", \"unknown_key\": 1}";
  std::ofstream(d / "broken.json") << "{not json";
  std::ofstream(d / "deep.json") << "{\"r_o_m\": 1480, \"r_min_m\": 4000, \"r_max_m\": 9000}";
  CHECK(run("orbit --config " + (d / "bad.json").string()).code == 2);
  CHECK(run("orbit --config " + (d / "broken.json").string()).code == 2);
  CHECK(run("precession --config " + (d / "deep.json").string()).code == 3);
  CHECK_THROWS_AS(run_scenario(d / "bad.json"), Error);
}

TEST_CASE("csv output on stdout") {
  const Run r = run("electric --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("scenario,model,quantity,value,unit,tolerance,provenance,reference_model\r\n", 0) == 0);
}
