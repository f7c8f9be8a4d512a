#include "dressed/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dressed/dynamics.hpp"
#include "dressed/errors.hpp"

namespace dressed {

double bose_einstein(double omega, double beta) {
  if (!(omega > 0.0)) {
    throw DomainError("bose_einstein: omega must be positive");
  }
  if (!(beta > 0.0)) {
    throw DomainError("bose_einstein: beta must be positive");
  }
  const double x = beta * omega;
  if (x < 1e-6) {
    return 1.0 / x - 0.5 + x / 12.0;
  }
  const double denom = std::expm1(x);
  if (!std::isfinite(denom)) {
    return 0.0;
  }
  return 1.0 / denom;
}

OccupationSeries occupation_series(const DressedSpectrum& spectrum, double beta,
                                   double initial_occupation, std::span<const double> t_grid) {
  if (!(initial_occupation >= 0.0)) {
    throw DomainError("initial occupation must be nonnegative");
  }
  const Eigen::Index n_field = spectrum.n_field_modes();
  Eigen::VectorXd nbar(n_field);
  for (Eigen::Index k = 0; k < n_field; ++k) {
    nbar(k) = bose_einstein(spectrum.field_frequencies(k), beta);
  }
  const Eigen::MatrixXd weights = amplitude_weights(spectrum, t_grid);

  OccupationSeries out;
  out.beta = beta;
  out.initial_occupation = initial_occupation;
  out.samples.reserve(t_grid.size());
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    const double bath = weights.col(col).tail(n_field).dot(nbar);
    const double value = weights(0, col) * initial_occupation + bath;
    out.samples.push_back({t_grid[j], std::max(0.0, value)});
  }
  // Completeness makes the t = 0 value exact; pin it against rounding.
  if (t_grid.front() == 0.0) {
    out.samples.front().occupation = initial_occupation;
  }
  return out;
}

OccupationSummary cavity_occupation_summary(const OccupationSeries& series) {
  if (series.samples.empty()) {
    throw ContractViolation("occupation series is empty");
  }
  OccupationSummary s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& sample : series.samples) {
    total += sample.occupation;
    s.min = std::min(s.min, sample.occupation);
    s.max = std::max(s.max, sample.occupation);
  }
  s.mean = total / static_cast<double>(series.samples.size());
  return s;
}

}  // namespace dressed
