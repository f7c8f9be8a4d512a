#include "dressed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {

double AmplitudeSet::unitarity_residual() const {
  double total = 0.0;
  for (const auto& z : f) {
    total += std::norm(z);
  }
  return std::abs(total - 1.0);
}

AmplitudeSet amplitudes(const DressedSpectrum& spectrum, double t) {
  const Eigen::Index n = spectrum.size();
  Eigen::VectorXd re(n);
  Eigen::VectorXd im(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const double w = spectrum.components(0, s);
    const double angle = spectrum.omega(s) * t;
    re(s) = w * std::cos(angle);
    im(s) = -w * std::sin(angle);
  }
  const Eigen::VectorXd f_re = spectrum.components * re;
  const Eigen::VectorXd f_im = spectrum.components * im;

  AmplitudeSet out;
  out.t = t;
  out.f.resize(static_cast<std::size_t>(n));
  for (Eigen::Index nu = 0; nu < n; ++nu) {
    out.f[static_cast<std::size_t>(nu)] = {f_re(nu), f_im(nu)};
  }
  return out;
}

std::complex<double> survival_amplitude(const DressedSpectrum& spectrum, double t) {
  double re = 0.0;
  double im = 0.0;
  for (Eigen::Index s = 0; s < spectrum.size(); ++s) {
    const double w = spectrum.components(0, s) * spectrum.components(0, s);
    const double angle = spectrum.omega(s) * t;
    re += w * std::cos(angle);
    im -= w * std::sin(angle);
  }
  return {re, im};
}

void validate_time_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) {
    throw ContractViolation("time grid is empty");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw ContractViolation("time grid is not strictly increasing at index " + std::to_string(i));
    }
  }
}

SurvivalSeries survival_series(const DressedSpectrum& spectrum, std::span<const double> t_grid) {
  validate_time_grid(t_grid);
  SurvivalSeries out;
  out.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    const auto f00 = survival_amplitude(spectrum, t);
    out.samples.push_back({t, std::min(1.0, std::norm(f00)), std::arg(f00)});
  }
  return out;
}

Eigen::MatrixXd amplitude_weights(const DressedSpectrum& spectrum, std::span<const double> t_grid) {
  validate_time_grid(t_grid);
  const Eigen::Index n = spectrum.size();
  const auto n_t = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXd re(n, n_t);
  Eigen::MatrixXd im(n, n_t);
  for (Eigen::Index j = 0; j < n_t; ++j) {
    const double t = t_grid[static_cast<std::size_t>(j)];
    for (Eigen::Index s = 0; s < n; ++s) {
      const double w = spectrum.components(0, s);
      const double angle = spectrum.omega(s) * t;
      re(s, j) = w * std::cos(angle);
      im(s, j) = -w * std::sin(angle);
    }
  }
  const Eigen::MatrixXd f_re = spectrum.components * re;
  const Eigen::MatrixXd f_im = spectrum.components * im;
  return f_re.cwiseAbs2() + f_im.cwiseAbs2();
}

DecayFit decay_rate_fit(const SurvivalSeries& series, TimeWindow window) {
  if (series.samples.empty() || series.samples.front().t > window.begin ||
      series.samples.back().t < window.end) {
    throw ContractViolation("survival series does not cover the fit window");
  }
  std::vector<double> ts;
  std::vector<double> ys;
  for (const auto& sample : series.samples) {
    if (sample.t < window.begin || sample.t > window.end) {
      continue;
    }
    if (!(sample.survival > 0.0)) {
      throw WindowError("nonpositive survival at t = " + std::to_string(sample.t));
    }
    ts.push_back(sample.t);
    ys.push_back(std::log(sample.survival));
  }
  if (ts.size() < 3) {
    throw InsufficientDataError("decay fit needs at least 3 samples in the window, got " +
                                std::to_string(ts.size()));
  }

  const auto n = static_cast<double>(ts.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += ys[i];
  }
  t_mean /= n;
  y_mean /= n;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - t_mean;
    const double dy = ys[i] - y_mean;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  const double intercept = y_mean - slope * t_mean;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - (intercept + slope * ts[i]);
    ss_res += r * r;
  }

  DecayFit fit;
  fit.n_samples = ts.size();
  // A flat series within rounding is a perfect fit with zero rate.
  if (syy / n < 1e-24) {
    fit.rate = 0.0;
    fit.r_squared = 1.0;
  } else {
    fit.rate = -slope;
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

std::vector<double> uniform_grid(double t_max, std::size_t samples) {
  if (samples == 0) {
    throw DomainError("time grid needs at least one sample");
  }
  if (samples > 1 && !(t_max > 0.0)) {
    throw DomainError("t_max must be positive");
  }
  std::vector<double> grid(samples);
  if (samples == 1) {
    grid[0] = 0.0;
    return grid;
  }
  const double step = t_max / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    grid[i] = step * static_cast<double>(i);
  }
  grid.back() = t_max;
  return grid;
}

ConvergenceReport survival_convergence(ModelParams params, std::span<const double> t_grid,
                                       double tolerance, int max_modes) {
  validate_time_grid(t_grid);
  params.validate();
  const double spacing = params.mode_spacing();
  int n = std::max(1, static_cast<int>(std::ceil(3.0 * params.omega_bar / spacing)));

  auto moduli = [&](int modes) {
    params.n_modes = modes;
    const DressedSpectrum spectrum = solve_model(params);
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
      out.push_back(std::abs(survival_amplitude(spectrum, t)));
    }
    return out;
  };

  ConvergenceReport report;
  std::vector<double> current = moduli(n);
  while (true) {
    const int next_n = 2 * n;
    const std::vector<double> next = moduli(next_n);
    double change = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      change = std::max(change, std::abs(current[i] - next[i]));
    }
    report.n_modes = n;
    report.max_change = change;
    if (change < tolerance || next_n > max_modes) {
      return report;
    }
    n = next_n;
    current = next;
  }
}

}  // namespace dressed
