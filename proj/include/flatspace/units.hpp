#pragma once

#include <numbers>

// Geometric units: c = 1, every length in meters, time measured in light-meters.
namespace flatspace::units {

inline constexpr double G = 6.674e-11;   // m^3 kg^-1 s^-2
inline constexpr double c = 2.998e8;     // m/s
inline constexpr double pi = std::numbers::pi;

inline constexpr double arcsec_per_rad = 180.0 * 3600.0 / pi;
inline constexpr double mas_per_rad = 1000.0 * arcsec_per_rad;
inline constexpr double seconds_per_year = 365.25 * 86400.0;
inline constexpr double seconds_per_century = 100.0 * seconds_per_year;

// e^2 / (4 pi eps0) in J m, for converting charge^2/length into joules.
inline constexpr double coulomb_e2 = 2.307077552e-28;

// r_o = G M / c^2 for a mass in kg.
constexpr double field_radius(double mass_kg) { return G * mass_kg / (c * c); }
constexpr double to_seconds(double light_meters) { return light_meters / c; }
constexpr double to_meters(double seconds) { return seconds * c; }

}  // namespace flatspace::units
