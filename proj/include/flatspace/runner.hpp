#pragma once

#include <filesystem>

#include "flatspace/report.hpp"
#include "flatspace/scenario.hpp"

namespace flatspace {

// Dispatches on s.command. Throws flatspace::Error.
RunReport run_scenario(const Scenario& s);

// Reads and validates a JSON scenario file, then runs it.
RunReport run_scenario(const std::filesystem::path& config);

}  // namespace flatspace
