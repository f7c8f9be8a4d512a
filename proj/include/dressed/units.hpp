#pragma once

namespace dressed::units {

// CODATA 2018 exact / recommended values.
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kBoltzmann = 1.380649e-23;       // J / K
inline constexpr double kSpeedOfLight = 299792458.0;     // m / s

// Natural units: hbar = c = k_B = 1 and the time unit is 1/omega_bar, so the
// atom frequency is exactly 1 and every other quantity is a ratio against it.
struct NaturalScales {
  double omega = 1.0;   // omega_bar in units of itself
  double radius = 0.0;  // omega_bar R / c
  double beta = 0.0;    // hbar omega_bar / (k_B T); 0 when no temperature was given
};

struct SiScales {
  double omega = 0.0;        // rad/s
  double radius = 0.0;       // m
  double temperature = 0.0;  // K
};

// Throws DomainError on nonpositive inputs.
NaturalScales natural_from_si(double omega_si, double radius_si, double temperature_si);
NaturalScales natural_from_si(double omega_si, double radius_si);

// Inverse of natural_from_si given the SI anchor frequency.
SiScales si_from_natural(const NaturalScales& scales, double omega_si);

// Frequency (rad/s) and time (s) conversions against the anchor omega_si.
double frequency_to_natural(double frequency_si, double omega_si);
double time_to_natural(double time_si, double omega_si);
double beta_from_temperature(double temperature_si, double omega_si);

}  // namespace dressed::units
