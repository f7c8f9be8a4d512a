#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dressed/model.hpp"
#include "dressed/spectral.hpp"

namespace dressed {

// Amplitudes f_{0 nu}(t) = sum_s t_0^s t_nu^s exp(-i Omega_s t) for an
// excitation that starts on the dressed atom.
struct AmplitudeSet {
  double t = 0.0;
  std::vector<std::complex<double>> f;

  // |sum_nu |f_nu|^2 - 1|
  double unitarity_residual() const;
};

struct SurvivalSample {
  double t = 0.0;
  double survival = 0.0;  // |f_00(t)|^2
  double phase = 0.0;     // arg f_00(t)
};

struct SurvivalSeries {
  std::vector<SurvivalSample> samples;
};

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

struct DecayFit {
  double rate = 0.0;       // -d ln|f_00|^2 / dt
  double r_squared = 0.0;  // coefficient of determination of the log-linear fit
  std::size_t n_samples = 0;
};

// Negative t is accepted and gives the time-reversed amplitudes.
AmplitudeSet amplitudes(const DressedSpectrum& spectrum, double t);

// f_00(t) alone, O(N).
std::complex<double> survival_amplitude(const DressedSpectrum& spectrum, double t);

// Requires a nonempty, strictly increasing grid.
SurvivalSeries survival_series(const DressedSpectrum& spectrum, std::span<const double> t_grid);

// |f_{0 nu}(t_j)|^2 as an (N+1) x grid-size matrix.
Eigen::MatrixXd amplitude_weights(const DressedSpectrum& spectrum, std::span<const double> t_grid);

// Least-squares slope of ln survival against t over the samples inside the window.
DecayFit decay_rate_fit(const SurvivalSeries& series, TimeWindow window);

// `samples` evenly spaced points covering [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t samples);

void validate_time_grid(std::span<const double> t_grid);

struct ConvergenceReport {
  int n_modes = 0;           // smallest N passing the doubling test
  double max_change = 0.0;   // max |f_00| change at that doubling
};

// Starts at the smallest N with N spacing >= 3 omega_bar and doubles N until
// max_t ||f_00|(N) - |f_00|(2N)| < tolerance over the grid, or until max_modes
// is reached (then the last pair is reported).
ConvergenceReport survival_convergence(ModelParams params, std::span<const double> t_grid,
                                       double tolerance = 1e-6, int max_modes = 4096);

}  // namespace dressed
