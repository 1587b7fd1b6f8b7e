#include "flatspace/errors.hpp"
#include "flatspace/model.hpp"

namespace flatspace {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PotentialOutOfRange: return "PotentialOutOfRange";
    case ErrorKind::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidSpeed: return "InvalidSpeed";
    case ErrorKind::UnboundOrbit: return "UnboundOrbit";
    case ErrorKind::TurningPointNotFound: return "TurningPointNotFound";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::InsufficientOrbits: return "InsufficientOrbits";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::GeometryInvalid: return "GeometryInvalid";
    case ErrorKind::RayCaptured: return "RayCaptured";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::UnsupportedQuantity: return "UnsupportedQuantity";
  }
  return "Unknown";
}

bool is_validation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PotentialOutOfRange:
    case ErrorKind::NonPositiveRadius:
    case ErrorKind::InvalidSpeed:
    case ErrorKind::UnboundOrbit:
    case ErrorKind::GeometryInvalid:
    case ErrorKind::ConfigInvalid:
    case ErrorKind::UnsupportedQuantity:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

std::string_view to_string(Model model) {
  switch (model) {
    case Model::flatspace_weber: return "flatspace-weber";
    case Model::schwarzschild: return "schwarzschild";
    case Model::newtonian: return "newtonian";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  if (name == "flatspace-weber" || name == "flatspace") return Model::flatspace_weber;
  if (name == "schwarzschild") return Model::schwarzschild;
  if (name == "newtonian") return Model::newtonian;
  fail(ErrorKind::ConfigInvalid, "unknown model '" + std::string(name) + "'");
}

}  // namespace flatspace
