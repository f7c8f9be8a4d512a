#include "dressed/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dressed/errors.hpp"
#include "dressed/units.hpp"

namespace dressed {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) {
      throw ConfigError("trailing characters");
    }
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': '" + text + "'");
  }
}

long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used != text.size()) {
      throw ConfigError("trailing characters");
    }
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
  }
}

bool parse_bool(const std::string& key, std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  throw ConfigError("invalid boolean for '" + key + "': '" + text + "'");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(parse_double("list", item));
    }
  }
  return out;
}

void apply_config_value(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw_value);

  if (key.rfind("sweep.", 0) == 0) {
    const std::string axis = key.substr(6);
    static const std::vector<std::string> kAxes{"xi", "phi", "temperature", "radius", "g"};
    if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end()) {
      throw ConfigError("unknown sweep axis '" + axis + "'");
    }
    c.sweep[axis] = parse_list(value);
    return;
  }

  if (key == "si") c.si = parse_bool(key, value);
  else if (key == "omega_bar") c.omega_bar = parse_double(key, value);
  else if (key == "g") c.g = parse_double(key, value);
  else if (key == "radius") c.radius = parse_double(key, value);
  else if (key == "n_modes") c.n_modes = static_cast<int>(parse_integer(key, value));
  else if (key == "cutoff_factor") c.cutoff_factor = parse_double(key, value);
  else if (key == "xi") c.xi = parse_double(key, value);
  else if (key == "phi") c.phi = parse_double(key, value);
  else if (key == "temperature") c.temperature = parse_double(key, value);
  else if (key == "beta") c.beta = parse_double(key, value);
  else if (key == "n0_init") c.n0_init = parse_double(key, value);
  else if (key == "t_max") c.t_max = parse_double(key, value);
  else if (key == "samples") c.samples = static_cast<std::size_t>(parse_integer(key, value));
  else if (key == "fit_begin") c.fit_begin = parse_double(key, value);
  else if (key == "fit_end") c.fit_end = parse_double(key, value);
  else if (key == "n_modes_oracle") c.n_modes_oracle = static_cast<int>(parse_integer(key, value));
  else if (key == "n_max") c.n_max = static_cast<int>(parse_integer(key, value));
  else if (key == "beta_list") c.beta_list = parse_list(value);
  else if (key == "t_list") c.t_list = parse_list(value);
  else if (key == "stray_partition_factor") c.stray_partition_factor = parse_bool(key, value);
  else if (key == "basis_cap") c.basis_cap = static_cast<std::size_t>(parse_integer(key, value));
  else if (key == "check_convergence") c.check_convergence = parse_bool(key, value);
  else if (key == "out") c.out_dir = value;
  else if (key == "jobs") c.jobs = static_cast<int>(parse_integer(key, value));
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_text(RunConfig& config, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_config_value(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

ResolvedConfig resolve(const RunConfig& c) {
  ResolvedConfig r;
  if (c.si) {
    const auto scales = units::natural_from_si(c.omega_bar, c.radius);
    r.omega_si = c.omega_bar;
    r.model.omega_bar = scales.omega;
    r.model.radius = scales.radius;
    r.model.g = units::frequency_to_natural(c.g, c.omega_bar);
    r.t_max = units::time_to_natural(c.t_max, c.omega_bar);
    if (c.fit_begin) r.fit_begin = units::time_to_natural(*c.fit_begin, c.omega_bar);
    if (c.fit_end) r.fit_end = units::time_to_natural(*c.fit_end, c.omega_bar);
    if (c.temperature) {
      r.beta = units::beta_from_temperature(*c.temperature, c.omega_bar);
    } else if (c.beta) {
      r.beta = *c.beta;
    }
  } else {
    r.model.omega_bar = c.omega_bar;
    r.model.radius = c.radius;
    r.model.g = c.g;
    r.t_max = c.t_max;
    r.fit_begin = c.fit_begin;
    r.fit_end = c.fit_end;
    if (c.temperature) {
      if (!(*c.temperature > 0.0)) {
        throw DomainError("temperature must be positive");
      }
      r.beta = 1.0 / *c.temperature;
    } else if (c.beta) {
      r.beta = *c.beta;
    }
  }
  if (!(r.beta > 0.0)) {
    throw DomainError("beta must be positive");
  }

  if (c.n_modes > 0) {
    r.model.n_modes = c.n_modes;
  } else if (c.n_modes == 0) {
    if (!(c.cutoff_factor > 0.0) || !(r.model.radius > 0.0)) {
      throw DomainError("cutoff_factor and radius must be positive");
    }
    const double spacing = std::numbers::pi / r.model.radius;
    r.model.n_modes =
        std::max(1, static_cast<int>(std::ceil(c.cutoff_factor * r.model.omega_bar / spacing)));
  } else {
    throw DomainError("n_modes must be nonnegative");
  }
  r.model.validate();

  r.state = EntangledStateSpec{c.xi, c.phi};
  r.state.validate();
  if (!(c.n0_init >= 0.0)) {
    throw DomainError("n0_init must be nonnegative");
  }
  r.n0_init = c.n0_init;
  if (c.samples == 0) {
    throw DomainError("samples must be positive");
  }
  r.samples = c.samples;
  if (c.samples > 1 && !(r.t_max > 0.0)) {
    throw DomainError("t_max must be positive");
  }
  return r;
}

}  // namespace dressed
