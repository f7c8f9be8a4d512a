#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dressed/density.hpp"
#include "dressed/model.hpp"

namespace dressed {

// Raised for malformed config files or unknown keys (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Inputs exactly as the user gave them. With `si` set, omega_bar and g are in
// rad/s, radius in m, temperature in K and times in s; otherwise everything is
// already in natural units (hbar = c = k_B = 1).
struct RunConfig {
  bool si = false;
  double omega_bar = 1.0;
  double g = 0.01;
  double radius = 1.0;
  int n_modes = 64;             // 0 selects N from cutoff_factor
  double cutoff_factor = 2.0;   // N spacing >= cutoff_factor * omega_bar when n_modes == 0

  double xi = 0.5;
  double phi = 0.0;

  std::optional<double> temperature;
  std::optional<double> beta;   // natural units; ignored when temperature is set
  double n0_init = 1.0;

  double t_max = 100.0;
  std::size_t samples = 2000;
  std::optional<double> fit_begin;
  std::optional<double> fit_end;

  int n_modes_oracle = 1;
  int n_max = 3;
  std::vector<double> beta_list{0.2, 1.0, 5.0};
  std::vector<double> t_list{0.0, 0.7, 3.1};
  bool stray_partition_factor = false;  // negative control for `verify`
  std::size_t basis_cap = 1u << 16;

  bool check_convergence = false;
  std::filesystem::path out_dir = "out";
  int jobs = 1;

  // Grid axes for `sweep`: keys among xi, phi, temperature, radius, g.
  std::map<std::string, std::vector<double>> sweep;
};

// Everything converted to natural units; the only form physics code sees.
struct ResolvedConfig {
  ModelParams model;
  EntangledStateSpec state;
  double beta = 1.0;
  double n0_init = 1.0;
  double t_max = 100.0;
  std::size_t samples = 2000;
  std::optional<double> fit_begin;
  std::optional<double> fit_end;
  double omega_si = 0.0;  // SI anchor, 0 in natural mode
};

// key = value lines; '#' starts a comment; lists are comma separated. Keys are
// the long flag names with '-' replaced by '_' (sweep axes: sweep.xi, ...).
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

// Throws DomainError on physically invalid values.
ResolvedConfig resolve(const RunConfig& config);

std::vector<double> parse_list(const std::string& text);

}  // namespace dressed
