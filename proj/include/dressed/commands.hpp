#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dressed/config.hpp"

namespace dressed {

inline constexpr const char* kToolName = "dressed";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitPhysics = 2,
  kExitResource = 3,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // relative to the output directory
  nlohmann::json results = nlohmann::json::object();
};

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_dynamics(const RunConfig& config);
CommandResult cmd_density(const RunConfig& config);
CommandResult cmd_entanglement(const RunConfig& config);
CommandResult cmd_thermal(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config, std::ostream& out);
CommandResult cmd_sweep(const RunConfig& config);

// Runs a subcommand, writes manifest.json atomically and maps errors to exit
// codes (1 usage, 2 physics contract, 3 resource cap).
int run_command(const std::string& name, const RunConfig& config, std::ostream& out,
                std::ostream& err);

inline constexpr double kVerifyTolerance = 1e-12;

struct VerifyCell {
  double beta = 0.0;
  double t = 0.0;
  double max_deviation = 0.0;  // oracle vs closed form
  double beta_spread = 0.0;    // oracle vs oracle at the first beta
  bool pass = false;
};

std::vector<VerifyCell> verify_cells(const RunConfig& config);

struct SweepRow {
  std::size_t index = 0;
  double xi = 0.0;
  double phi = 0.0;
  double temperature = 0.0;  // NaN when the point is driven by beta
  double radius = 0.0;
  double g = 0.0;
  double beta = 0.0;
  int n_modes = 0;
  double min_survival = 0.0;
  double decay_rate = 0.0;  // NaN without a fit window
  double fit_r_squared = 0.0;
  double concurrence_initial = 0.0;
  double concurrence_final = 0.0;
  double eof_final = 0.0;
  double negativity_final = 0.0;
  double occupation_long_time = 0.0;  // mean over the last quarter of the grid
  std::string status = "ok";
};

// Cartesian product over the configured sweep axes, rows in grid order
// regardless of execution order. When series_dir is nonempty, one
// point_NNNN.csv per grid point is written there. Failures are recorded in
// the row status.
std::vector<SweepRow> run_sweep(const RunConfig& config,
                                const std::filesystem::path& series_dir = {});

}  // namespace dressed
