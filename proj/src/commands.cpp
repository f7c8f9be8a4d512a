#include "dressed/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "dressed/dynamics.hpp"
#include "dressed/entanglement.hpp"
#include "dressed/errors.hpp"
#include "dressed/io.hpp"
#include "dressed/spectral.hpp"
#include "dressed/thermal.hpp"
#include "dressed/units.hpp"

namespace dressed {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

fs::path prepare_out_dir(const RunConfig& config) {
  fs::create_directories(config.out_dir);
  return config.out_dir;
}

json config_echo(const RunConfig& c, const ResolvedConfig& r) {
  json inputs = {
      {"si", c.si},
      {"omega_bar", c.omega_bar},
      {"g", c.g},
      {"radius", c.radius},
      {"n_modes", c.n_modes},
      {"cutoff_factor", c.cutoff_factor},
      {"xi", c.xi},
      {"phi", c.phi},
      {"n0_init", c.n0_init},
      {"t_max", c.t_max},
      {"samples", c.samples},
      {"n_modes_oracle", c.n_modes_oracle},
      {"n_max", c.n_max},
      {"beta_list", c.beta_list},
      {"t_list", c.t_list},
      {"stray_partition_factor", c.stray_partition_factor},
      {"jobs", c.jobs},
  };
  inputs["units"] = c.si ? json{{"omega_bar", "rad/s"}, {"g", "rad/s"}, {"radius", "m"},
                                {"temperature", "K"}, {"t_max", "s"}}
                         : json{{"all", "natural (hbar = c = k_B = 1)"}};
  inputs["temperature"] = c.temperature ? json(*c.temperature) : json(nullptr);
  inputs["beta"] = c.beta ? json(*c.beta) : json(nullptr);
  inputs["fit_begin"] = c.fit_begin ? json(*c.fit_begin) : json(nullptr);
  inputs["fit_end"] = c.fit_end ? json(*c.fit_end) : json(nullptr);
  if (!c.sweep.empty()) {
    inputs["sweep"] = c.sweep;
  }

  json natural = {
      {"omega_bar", r.model.omega_bar},
      {"g", r.model.g},
      {"radius", r.model.radius},
      {"n_modes", r.model.n_modes},
      {"mode_spacing", r.model.mode_spacing()},
      {"beta", r.beta},
      {"beta_omega_bar", r.beta * r.model.omega_bar},
      {"t_max", r.t_max},
      {"xi", r.state.xi},
      {"phi", r.state.phi},
  };
  if (r.omega_si > 0.0) {
    natural["time_unit_s"] = 1.0 / r.omega_si;
  }
  return json{{"inputs", inputs}, {"natural", natural}};
}

json convergence_json(const DressedSpectrum& spectrum, const ResolvedConfig& r,
                      const RunConfig& c) {
  const auto amps = amplitudes(spectrum, r.t_max);
  json out = {
      {"n_modes", r.model.n_modes},
      {"unitarity_residual", amps.unitarity_residual()},
      {"eigensolver_residual", spectrum.reconstruction_residual},
      {"orthogonality_residual", spectrum.orthogonality_residual},
  };
  if (c.check_convergence) {
    const auto grid = uniform_grid(r.t_max, std::min<std::size_t>(r.samples, 200));
    const auto report = survival_convergence(r.model, grid);
    out["converged_n_modes"] = report.n_modes;
    out["converged_max_change"] = report.max_change;
  }
  return out;
}

std::string time_header() { return "t[nat_time]"; }

}  // namespace

CommandResult cmd_spectrum(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const DressedSpectrum spectrum = solve_model(r.model);

  io::CsvWriter csv(dir / "spectrum.csv");
  csv.header({"s", "Omega_s[nat_freq]", "t_0_s[1]"});
  for (Eigen::Index s = 0; s < spectrum.size(); ++s) {
    csv.row({static_cast<double>(s), spectrum.omega(s), spectrum.components(0, s)});
  }

  CommandResult result;
  result.files = {"spectrum.csv"};
  result.results["config"] = config_echo(config, r);
  result.results["convergence"] = convergence_json(spectrum, r, config);
  result.results["lowest_Omega"] = spectrum.omega(0);
  result.results["highest_Omega"] = spectrum.omega(spectrum.size() - 1);
  return result;
}

CommandResult cmd_dynamics(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const DressedSpectrum spectrum = solve_model(r.model);
  const auto grid = uniform_grid(r.t_max, r.samples);
  const SurvivalSeries series = survival_series(spectrum, grid);

  io::CsvWriter csv(dir / "dynamics.csv");
  csv.header({time_header(), "survival[1]", "phase[rad]"});
  double min_survival = 1.0;
  for (const auto& s : series.samples) {
    csv.row({s.t, s.survival, s.phase});
    min_survival = std::min(min_survival, s.survival);
  }

  CommandResult result;
  result.files = {"dynamics.csv"};
  result.results["config"] = config_echo(config, r);
  result.results["convergence"] = convergence_json(spectrum, r, config);
  result.results["min_survival"] = min_survival;
  if (r.fit_begin && r.fit_end) {
    const DecayFit fit = decay_rate_fit(series, {*r.fit_begin, *r.fit_end});
    result.results["decay_rate"] = fit.rate;
    result.results["fit_r_squared"] = fit.r_squared;
    result.results["fit_samples"] = fit.n_samples;
  }
  return result;
}

CommandResult cmd_density(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const DressedSpectrum spectrum = solve_model(r.model);
  const auto grid = uniform_grid(r.t_max, r.samples);

  io::CsvWriter csv(dir / "density.csv");
  csv.header({time_header(), "rho_00_00[1]", "rho_01_01[1]", "rho_10_10[1]", "re_rho_10_01[1]",
              "im_rho_10_01[1]", "min_eigenvalue[1]"});
  double worst_eigenvalue = 1.0;
  for (double t : grid) {
    const auto f00 = survival_amplitude(spectrum, t);
    const auto rho = reduced_density_closed(r.state, f00, f00);
    const auto report = positivity_check(rho);
    worst_eigenvalue = std::min(worst_eigenvalue, report.eigenvalues[0]);
    csv.row({t, rho(k00, k00).real(), rho(k01, k01).real(), rho(k10, k10).real(),
             rho(k10, k01).real(), rho(k10, k01).imag(), report.eigenvalues[0]});
  }

  CommandResult result;
  result.files = {"density.csv"};
  result.results["config"] = config_echo(config, r);
  result.results["convergence"] = convergence_json(spectrum, r, config);
  result.results["min_eigenvalue"] = worst_eigenvalue;
  result.results["positive_semidefinite"] = worst_eigenvalue >= -1e-10;
  return result;
}

CommandResult cmd_entanglement(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const DressedSpectrum spectrum = solve_model(r.model);
  const auto grid = uniform_grid(r.t_max, r.samples);
  const double c0 = 2.0 * std::sqrt(r.state.xi * (1.0 - r.state.xi));

  io::CsvWriter csv(dir / "entanglement.csv");
  csv.comment("C0 = " + io::format_number(c0));
  csv.header({time_header(), "survival[1]", "concurrence[1]", "eof[ebit]", "negativity[1]"});
  double min_survival = 1.0;
  double min_concurrence = 1.0;
  for (double t : grid) {
    const auto f00 = survival_amplitude(spectrum, t);
    const auto m = measures(reduced_density_closed(r.state, f00, f00));
    const double survival = std::min(1.0, std::norm(f00));
    csv.row({t, survival, m.concurrence, m.eof, m.negativity});
    min_survival = std::min(min_survival, survival);
    min_concurrence = std::min(min_concurrence, m.concurrence);
  }

  CommandResult result;
  result.files = {"entanglement.csv"};
  result.results["config"] = config_echo(config, r);
  result.results["convergence"] = convergence_json(spectrum, r, config);
  result.results["concurrence_initial"] = c0;
  result.results["min_survival"] = min_survival;
  result.results["min_concurrence"] = min_concurrence;
  return result;
}

CommandResult cmd_thermal(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const DressedSpectrum spectrum = solve_model(r.model);
  const auto grid = uniform_grid(r.t_max, r.samples);
  const OccupationSeries series = occupation_series(spectrum, r.beta, r.n0_init, grid);
  const OccupationSummary summary = cavity_occupation_summary(series);

  io::CsvWriter csv(dir / "thermal.csv");
  csv.comment("beta = " + io::format_number(r.beta));
  csv.comment("n0_init = " + io::format_number(r.n0_init));
  csv.comment("N = " + std::to_string(r.model.n_modes));
  csv.comment("R = " + io::format_number(r.model.radius));
  csv.comment("g = " + io::format_number(r.model.g));
  csv.header({time_header(), "occupation[1]"});
  for (const auto& s : series.samples) {
    csv.row({s.t, s.occupation});
  }

  CommandResult result;
  result.files = {"thermal.csv"};
  result.results["config"] = config_echo(config, r);
  result.results["convergence"] = convergence_json(spectrum, r, config);
  result.results["occupation_mean"] = summary.mean;
  result.results["occupation_min"] = summary.min;
  result.results["occupation_max"] = summary.max;
  result.results["bose_einstein_omega_bar"] = bose_einstein(r.model.omega_bar, r.beta);
  return result;
}

std::vector<VerifyCell> verify_cells(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  ModelParams oracle_model = r.model;
  oracle_model.n_modes = config.n_modes_oracle;
  if (config.beta_list.empty() || config.t_list.empty()) {
    throw DomainError("verify needs nonempty beta_list and t_list");
  }

  ThermalBathSpec bath;
  bath.n_max = config.n_max;
  bath.n_modes_oracle = config.n_modes_oracle;
  bath.basis_cap = config.basis_cap;
  bath.normalization = config.stray_partition_factor ? BathNormalization::kStrayOccupationFactor
                                                     : BathNormalization::kTruncatedBoseEinstein;
  // Resource check before any diagonalization.
  bath.beta = config.beta_list.front();
  bath.validate();
  const double basis = std::pow(static_cast<double>(bath.n_max + 1), bath.n_modes_oracle);
  if (basis > static_cast<double>(bath.basis_cap)) {
    throw ResourceError(fmt::format("oracle basis (n_max + 1)^n_modes_oracle = {}^{} = {} exceeds cap {}",
                                    bath.n_max + 1, bath.n_modes_oracle, basis, bath.basis_cap));
  }

  const DressedSpectrum spectrum = solve_model(oracle_model);
  std::vector<VerifyCell> cells;
  for (double t : config.t_list) {
    const auto f00 = survival_amplitude(spectrum, t);
    const auto closed = reduced_density_closed(r.state, f00, f00);
    ReducedDensityMatrix reference;
    bool first = true;
    for (double beta : config.beta_list) {
      bath.beta = beta;
      const auto oracle = thermal_trace_oracle(r.state, spectrum, bath, t);
      if (first) {
        reference = oracle;
        first = false;
      }
      VerifyCell cell;
      cell.beta = beta;
      cell.t = t;
      cell.max_deviation = oracle.max_deviation(closed);
      cell.beta_spread = oracle.max_deviation(reference);
      cell.pass = cell.max_deviation <= kVerifyTolerance && cell.beta_spread <= kVerifyTolerance;
      cells.push_back(cell);
    }
  }
  return cells;
}

CommandResult cmd_verify(const RunConfig& config, std::ostream& out) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const auto cells = verify_cells(config);

  io::CsvWriter csv(dir / "verify.csv");
  csv.header({"beta[nat]", time_header(), "max_deviation[1]", "beta_spread[1]", "status"});
  out << "beta,t,max_deviation,beta_spread,status\n";
  bool all_pass = true;
  double worst = 0.0;
  for (const auto& cell : cells) {
    const std::string status = cell.pass ? "PASS" : "FAIL";
    csv.raw_row({io::format_number(cell.beta), io::format_number(cell.t),
                 io::format_number(cell.max_deviation), io::format_number(cell.beta_spread),
                 status});
    out << fmt::format("{},{},{:.3e},{:.3e},{}\n", cell.beta, cell.t, cell.max_deviation,
                       cell.beta_spread, status);
    all_pass = all_pass && cell.pass;
    worst = std::max({worst, cell.max_deviation, cell.beta_spread});
  }
  out << (all_pass ? "PASS" : "FAIL") << fmt::format(" max deviation {:.3e}\n", worst);

  CommandResult result;
  result.files = {"verify.csv"};
  result.results["config"] = config_echo(config, r);
  result.results["cells"] = cells.size();
  result.results["max_deviation"] = worst;
  result.results["tolerance"] = kVerifyTolerance;
  result.results["pass"] = all_pass;
  result.results["normalization"] =
      config.stray_partition_factor ? "stray_occupation_factor" : "truncated_bose_einstein";
  result.exit_code = all_pass ? kExitOk : kExitPhysics;
  return result;
}

namespace {

SweepRow evaluate_point(RunConfig point_config, SweepRow row, const fs::path& series_path) {
  point_config.xi = row.xi;
  point_config.phi = row.phi;
  point_config.radius = row.radius;
  point_config.g = row.g;
  if (!std::isnan(row.temperature)) {
    point_config.temperature = row.temperature;
  }
  const ResolvedConfig r = resolve(point_config);
  row.beta = r.beta;
  row.n_modes = r.model.n_modes;

  const DressedSpectrum spectrum = solve_model(r.model);
  const auto grid = uniform_grid(r.t_max, r.samples);
  const SurvivalSeries series = survival_series(spectrum, grid);
  const OccupationSeries occupation = occupation_series(spectrum, r.beta, r.n0_init, grid);

  row.min_survival = 1.0;
  for (const auto& s : series.samples) {
    row.min_survival = std::min(row.min_survival, s.survival);
  }
  row.decay_rate = kNaN;
  row.fit_r_squared = kNaN;
  if (r.fit_begin && r.fit_end) {
    const DecayFit fit = decay_rate_fit(series, {*r.fit_begin, *r.fit_end});
    row.decay_rate = fit.rate;
    row.fit_r_squared = fit.r_squared;
  }
  row.concurrence_initial = 2.0 * std::sqrt(r.state.xi * (1.0 - r.state.xi));
  const auto f_final = survival_amplitude(spectrum, grid.back());
  const auto m_final = measures(reduced_density_closed(r.state, f_final, f_final));
  row.concurrence_final = m_final.concurrence;
  row.eof_final = m_final.eof;
  row.negativity_final = m_final.negativity;

  const std::size_t tail_begin = occupation.samples.size() * 3 / 4;
  double total = 0.0;
  for (std::size_t i = tail_begin; i < occupation.samples.size(); ++i) {
    total += occupation.samples[i].occupation;
  }
  row.occupation_long_time = total / static_cast<double>(occupation.samples.size() - tail_begin);

  if (!series_path.empty()) {
    io::CsvWriter csv(series_path);
    csv.header({time_header(), "survival[1]", "occupation[1]", "concurrence[1]"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto f00 = survival_amplitude(spectrum, grid[i]);
      const auto m = measures_identical_atoms(r.state.xi, std::min(1.0, std::norm(f00)));
      csv.row({grid[i], series.samples[i].survival, occupation.samples[i].occupation,
               m.concurrence});
    }
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& config, const fs::path& series_dir) {
  auto axis = [&](const std::string& name, double fallback) {
    const auto it = config.sweep.find(name);
    if (it == config.sweep.end() || it->second.empty()) {
      return std::vector<double>{fallback};
    }
    return it->second;
  };
  const auto xis = axis("xi", config.xi);
  const auto phis = axis("phi", config.phi);
  const auto temperatures = axis("temperature", config.temperature.value_or(kNaN));
  const auto radii = axis("radius", config.radius);
  const auto gs = axis("g", config.g);

  std::vector<SweepRow> rows;
  for (double xi : xis) {
    for (double phi : phis) {
      for (double temperature : temperatures) {
        for (double radius : radii) {
          for (double g : gs) {
            SweepRow row;
            row.index = rows.size();
            row.xi = xi;
            row.phi = phi;
            row.temperature = temperature;
            row.radius = radius;
            row.g = g;
            rows.push_back(row);
          }
        }
      }
    }
  }

  if (!series_dir.empty()) {
    fs::create_directories(series_dir);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const fs::path path =
          series_dir.empty() ? fs::path{} : series_dir / fmt::format("point_{:04d}.csv", i);
      try {
        rows[i] = evaluate_point(config, rows[i], path);
      } catch (const std::exception& e) {
        rows[i].status = std::string("error: ") + e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(rows.size())));
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    worker();
  }
  return rows;
}

CommandResult cmd_sweep(const RunConfig& config) {
  const ResolvedConfig r = resolve(config);
  const fs::path dir = prepare_out_dir(config);
  const auto rows = run_sweep(config, dir / "points");

  io::CsvWriter csv(dir / "sweep.csv");
  const std::string temperature_unit = config.si ? "K" : "nat";
  const std::string length_unit = config.si ? "m" : "nat";
  const std::string freq_unit = config.si ? "rad/s" : "nat_freq";
  csv.header({"index", "xi[1]", "phi[rad]", "temperature[" + temperature_unit + "]",
              "radius[" + length_unit + "]", "g[" + freq_unit + "]", "beta[nat]", "n_modes",
              "min_survival[1]", "decay_rate[nat_freq]", "fit_r_squared[1]", "C0[1]",
              "concurrence_tmax[1]", "eof_tmax[ebit]", "negativity_tmax[1]",
              "occupation_long_time[1]", "status"});
  std::vector<std::string> files;
  std::size_t failures = 0;
  for (const auto& row : rows) {
    std::vector<std::string> cells = {std::to_string(row.index)};
    for (double v : {row.xi, row.phi, row.temperature, row.radius, row.g, row.beta}) {
      cells.push_back(io::format_number(v));
    }
    cells.push_back(std::to_string(row.n_modes));
    for (double v : {row.min_survival, row.decay_rate, row.fit_r_squared, row.concurrence_initial,
                     row.concurrence_final, row.eof_final, row.negativity_final,
                     row.occupation_long_time}) {
      cells.push_back(io::format_number(v));
    }
    cells.push_back(row.status);
    csv.raw_row(cells);
    if (row.status == "ok") {
      files.push_back(fmt::format("points/point_{:04d}.csv", row.index));
    } else {
      ++failures;
    }
  }

  CommandResult result;
  result.files = {"sweep.csv"};
  result.files.insert(result.files.end(), files.begin(), files.end());
  result.results["config"] = config_echo(config, r);
  result.results["points"] = rows.size();
  result.results["failures"] = failures;
  return result;
}

int run_command(const std::string& name, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  const std::time_t wall_start = std::time(nullptr);
  CommandResult result;
  try {
    if (name == "spectrum") result = cmd_spectrum(config);
    else if (name == "dynamics") result = cmd_dynamics(config);
    else if (name == "density") result = cmd_density(config);
    else if (name == "entanglement") result = cmd_entanglement(config);
    else if (name == "thermal") result = cmd_thermal(config);
    else if (name == "verify") result = cmd_verify(config, out);
    else if (name == "sweep") result = cmd_sweep(config);
    else {
      err << "error: unknown subcommand '" << name << "'\n";
      return kExitUsage;
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource cap exceeded: " << e.what() << '\n';
    return kExitResource;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const ModelInstabilityError& e) {
    err << "model instability: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const BracketingError& e) {
    err << "root bracketing failed: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const WindowError& e) {
    err << "fit window error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const InsufficientDataError& e) {
    err << "fit window error: " << e.what() << '\n';
    return kExitPhysics;
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json manifest = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", name},
      {"started_at_unix", static_cast<long long>(wall_start)},
      {"wall_clock_seconds", elapsed},
      {"exit_code", result.exit_code},
  };
  if (result.results.contains("config")) {
    manifest["config"] = result.results["config"];
    result.results.erase("config");
  }
  if (result.results.contains("convergence")) {
    manifest["convergence"] = result.results["convergence"];
    result.results.erase("convergence");
  }
  manifest["results"] = result.results;
  json files = json::array();
  for (const auto& file : result.files) {
    const fs::path path = config.out_dir / file;
    files.push_back({{"path", file},
                     {"bytes", fs::file_size(path)},
                     {"sha256", io::sha256_file(path)}});
  }
  manifest["files"] = files;
  io::write_json_atomic(config.out_dir / "manifest.json", manifest);

  if (name != "verify") {
    out << name << ": wrote";
    for (const auto& file : result.files) {
      if (file.rfind("points/", 0) != 0) {
        out << ' ' << (config.out_dir / file).string();
      }
    }
    out << " and " << (config.out_dir / "manifest.json").string() << '\n';
  }
  return result.exit_code;
}

}  // namespace dressed
