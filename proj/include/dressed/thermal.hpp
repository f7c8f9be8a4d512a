#pragma once

#include <span>
#include <vector>

#include "dressed/spectral.hpp"

namespace dressed {

// Mean Bose-Einstein occupation 1/(e^{beta omega} - 1). Returns 0 once the
// exponent overflows and uses 1/x - 1/2 + x/12 for x = beta omega < 1e-6.
// Throws DomainError for nonpositive omega or beta.
double bose_einstein(double omega, double beta);

struct OccupationSample {
  double t = 0.0;
  double occupation = 0.0;
};

struct OccupationSeries {
  double beta = 0.0;
  double initial_occupation = 0.0;
  std::vector<OccupationSample> samples;
};

// n'(t, beta) = |f_00(t)|^2 n(0) + sum_{k>=1} |f_0k(t)|^2 nbar(omega_k, beta).
//
// Linear in the initial occupations; it reproduces n'(0) = n(0), decays to 0
// at zero temperature and tends to nbar(omega_bar, beta) in the large-cavity
// limit where the weights |f_0k|^2 pile up around resonance.
OccupationSeries occupation_series(const DressedSpectrum& spectrum, double beta,
                                   double initial_occupation, std::span<const double> t_grid);

struct OccupationSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

OccupationSummary cavity_occupation_summary(const OccupationSeries& series);

}  // namespace dressed
