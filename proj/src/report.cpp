#include "flatspace/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "flatspace/errors.hpp"

namespace flatspace {

const ResultRow* RunReport::find(const std::string& quantity, const std::string& model) const {
  for (const auto& r : results)
    if (r.quantity == quantity && (model.empty() || r.model == model)) return &r;
  return nullptr;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json j;
  j["tool"] = "flatspace";
  j["tool_version"] = report.tool_version;
  j["config"] = to_json(report.config);
  j["results"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json row = {{"scenario", r.scenario}, {"model", r.model},   {"quantity", r.quantity},
                          {"value", r.value},       {"unit", r.unit},     {"tolerance", r.tolerance},
                          {"provenance", r.provenance}};
    if (!r.reference_model.empty()) row["reference_model"] = r.reference_model;
    j["results"].push_back(row);
  }
  j["tables"] = nlohmann::json::array();
  for (const auto& t : report.tables)
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows.size()}});
  j["notes"] = report.notes;
  return j;
}

std::string results_csv(const RunReport& report) {
  std::string out = "scenario,model,quantity,value,unit,tolerance,provenance,reference_model\r\n";
  for (const auto& r : report.results) {
    out += csv_escape(r.scenario) + ',' + csv_escape(r.model) + ',' + csv_escape(r.quantity) + ',' +
           format_number(r.value) + ',' + csv_escape(r.unit) + ',' + format_number(r.tolerance) + ',' +
           csv_escape(r.provenance) + ',' + csv_escape(r.reference_model) + "\r\n";
  }
  return out;
}

std::string table_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) fail(ErrorKind::ConfigInvalid, "cannot write " + p.string());
  f << text;
}

}  // namespace

std::vector<std::filesystem::path> write_report(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::ConfigInvalid, "cannot create output directory " + dir.string());
  const std::string stem = report.config.name + "_" + report.config.command;
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    const auto p = dir / name;
    write_file(p, text);
    written.push_back(p);
  };
  emit(stem + "_results.json", to_json(report).dump(2) + "\n");
  emit(stem + "_results.csv", results_csv(report));
  for (const auto& t : report.tables) emit(stem + "_" + t.name + ".csv", table_csv(t));
  return written;
}

}  // namespace flatspace
