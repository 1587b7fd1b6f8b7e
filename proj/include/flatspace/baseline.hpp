#pragma once

#include <string_view>

#include "flatspace/model.hpp"
#include "flatspace/scenario.hpp"

namespace flatspace {

enum class Quantity { precession, deflection, delay };

std::string_view to_string(Quantity q);
// Throws UnsupportedQuantity.
Quantity quantity_from_string(std::string_view name);

// Observable in the standard Schwarzschild geometry:
//   precession  rad per orbit from the numerically integrated geodesic
//   deflection  rad, exact bending integral for impact radius grazing_radius
//   delay       light-meters, isotropic-coordinate index along the straight path
double schwarzschild_baseline(Quantity q, const Scenario& s);

// Same observable in any of the three models. The flatspace precession is the
// weak-field rosette route.
double model_observable(Model model, Quantity q, const Scenario& s);

}  // namespace flatspace
