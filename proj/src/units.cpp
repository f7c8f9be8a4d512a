#include "dressed/units.hpp"

#include <string>

#include "dressed/errors.hpp"

namespace dressed::units {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

}  // namespace

double beta_from_temperature(double temperature_si, double omega_si) {
  require_positive(temperature_si, "temperature");
  require_positive(omega_si, "omega");
  return kHbar * omega_si / (kBoltzmann * temperature_si);
}

double frequency_to_natural(double frequency_si, double omega_si) {
  require_positive(omega_si, "omega");
  return frequency_si / omega_si;
}

double time_to_natural(double time_si, double omega_si) {
  require_positive(omega_si, "omega");
  return time_si * omega_si;
}

NaturalScales natural_from_si(double omega_si, double radius_si) {
  require_positive(omega_si, "omega");
  require_positive(radius_si, "radius");
  return NaturalScales{1.0, omega_si * radius_si / kSpeedOfLight, 0.0};
}

NaturalScales natural_from_si(double omega_si, double radius_si, double temperature_si) {
  NaturalScales scales = natural_from_si(omega_si, radius_si);
  scales.beta = beta_from_temperature(temperature_si, omega_si);
  return scales;
}

SiScales si_from_natural(const NaturalScales& scales, double omega_si) {
  require_positive(omega_si, "omega");
  require_positive(scales.radius, "radius");
  SiScales si;
  si.omega = scales.omega * omega_si;
  si.radius = scales.radius * kSpeedOfLight / omega_si;
  si.temperature = scales.beta > 0.0 ? kHbar * omega_si / (kBoltzmann * scales.beta) : 0.0;
  return si;
}

}  // namespace dressed::units
