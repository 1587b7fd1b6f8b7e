#pragma once

#include <string_view>

namespace flatspace {

enum class Model { flatspace_weber, schwarzschild, newtonian };

std::string_view to_string(Model model);
// Throws ConfigInvalid on unknown names.
Model model_from_string(std::string_view name);

}  // namespace flatspace
