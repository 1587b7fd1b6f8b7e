#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatspace {

enum class ErrorKind {
  PotentialOutOfRange,
  NonPositiveRadius,
  NoConvergence,
  InvalidSpeed,
  UnboundOrbit,
  TurningPointNotFound,
  ToleranceNotMet,
  InsufficientOrbits,
  DenominatorVanishes,
  GeometryInvalid,
  RayCaptured,
  ConfigInvalid,
  UnsupportedQuantity,
};

std::string_view to_string(ErrorKind kind);

// Bad input (exit code 2) versus a numerical failure (exit code 3).
bool is_validation(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace flatspace
