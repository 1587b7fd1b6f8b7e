#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatspace/scenario.hpp"

namespace flatspace {

struct ResultRow {
  std::string scenario;
  std::string model;
  std::string quantity;
  double value = 0.0;
  std::string unit;
  double tolerance = 0.0;
  std::string provenance;       // "numeric", "closed-form", "quadrature", "comparison", ...
  std::string reference_model;  // set on comparison rows
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  std::string tool_version;
  Scenario config;
  std::vector<ResultRow> results;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  const ResultRow* find(const std::string& quantity, const std::string& model = {}) const;
};

nlohmann::json to_json(const RunReport& report);

// Shortest round-trip decimal form; identical input gives identical text.
std::string format_number(double v);
std::string csv_escape(const std::string& field);
std::string results_csv(const RunReport& report);
std::string table_csv(const Table& table);

// Writes <name>_<command>_results.json, _results.csv and one _<table>.csv per table.
// Returns the files written.
std::vector<std::filesystem::path> write_report(const RunReport& report,
                                                const std::filesystem::path& dir);

}  // namespace flatspace
