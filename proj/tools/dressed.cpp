// Command-line front end for the dressed-atom entanglement simulator.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dressed/commands.hpp"
#include "dressed/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dressed-atom bipartite entanglement at finite temperature"};
  app.set_version_flag("--version", std::string(dressed::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);

  // Overrides are applied after the config file, in the same key space.
  struct Override {
    const char* flag;
    const char* key;
    const char* help;
  };
  const std::vector<Override> overrides = {
      {"--out", "out", "output directory"},
      {"--jobs", "jobs", "parallel sweep points"},
      {"--omega-bar", "omega_bar", "atom frequency (natural units, or rad/s with --si)"},
      {"--g", "g", "coupling frequency (natural units, or rad/s with --si)"},
      {"--radius", "radius", "cavity radius (natural units, or m with --si)"},
      {"--n-modes", "n_modes", "field-mode cutoff N (0 = automatic)"},
      {"--cutoff-factor", "cutoff_factor", "automatic N covers cutoff_factor * omega_bar"},
      {"--xi", "xi", "superposition weight in [0, 1]"},
      {"--phi", "phi", "relative phase (rad)"},
      {"--temperature", "temperature", "bath temperature (natural units, or K with --si)"},
      {"--beta", "beta", "inverse temperature (natural units)"},
      {"--n0-init", "n0_init", "initial atom occupation"},
      {"--t-max", "t_max", "end of the time grid (natural units, or s with --si)"},
      {"--samples", "samples", "number of time samples"},
      {"--fit-begin", "fit_begin", "decay-fit window start"},
      {"--fit-end", "fit_end", "decay-fit window end"},
      {"--n-modes-oracle", "n_modes_oracle", "field modes kept by the brute-force trace"},
      {"--n-max", "n_max", "per-mode Fock truncation of the brute-force trace"},
      {"--beta-list", "beta_list", "comma-separated inverse temperatures for verify"},
      {"--t-list", "t_list", "comma-separated times for verify"},
      {"--basis-cap", "basis_cap", "largest background basis the oracle may enumerate"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& o : overrides) {
    options[o.key] = app.add_option(o.flag, values[o.key], o.help);
  }
  bool si = false;
  bool stray = false;
  bool convergence = false;
  app.add_flag("--si", si, "interpret inputs as SI (rad/s, m, K, s)");
  app.add_flag("--stray-partition-factor", stray,
               "verify with the partition function that keeps the occupation factor (negative control)");
  app.add_flag("--check-convergence", convergence, "report the converged mode count in the manifest");

  std::vector<std::string> sweep_axes;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"spectrum", "dressed frequencies and atom components -> spectrum.csv"},
      {"dynamics", "survival probability and phase -> dynamics.csv"},
      {"density", "reduced two-atom density matrix -> density.csv"},
      {"entanglement", "concurrence, entanglement of formation, negativity -> entanglement.csv"},
      {"thermal", "dressed-atom occupation at finite temperature -> thermal.csv"},
      {"verify", "brute-force thermal trace against the closed form across temperatures"},
      {"sweep", "cartesian parameter sweep -> sweep.csv + points/"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (name == "sweep") {
      sub->add_option("--axis", sweep_axes, "extra grid axis as name=v1,v2,... (xi, phi, temperature, radius, g)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? dressed::kExitOk : dressed::kExitUsage;
  }

  dressed::RunConfig config;
  try {
    if (!config_path.empty()) {
      dressed::apply_config_file(config, config_path);
    }
    for (const auto& [key, option] : options) {
      if (option->count() > 0) {
        dressed::apply_config_value(config, key, values[key]);
      }
    }
    if (si) config.si = true;
    if (stray) config.stray_partition_factor = true;
    if (convergence) config.check_convergence = true;
    for (const auto& axis : sweep_axes) {
      const auto eq = axis.find('=');
      if (eq == std::string::npos) {
        throw dressed::ConfigError("--axis expects name=v1,v2,...");
      }
      dressed::apply_config_value(config, "sweep." + axis.substr(0, eq), axis.substr(eq + 1));
    }
  } catch (const dressed::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return dressed::kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return dressed::run_command(name, config, std::cout, std::cerr);
}
