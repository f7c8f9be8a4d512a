#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dressed/spectral.hpp"

namespace dressed {

// Initial superposition sqrt(xi)|1_A 0_B> + sqrt(1 - xi) e^{i phi} |0_A 1_B>.
struct EntangledStateSpec {
  double xi = 0.5;
  double phi = 0.0;

  void validate() const;
};

// Two-qubit basis ordering: index = 2 p_A + p_B, i.e. |00>, |01>, |10>, |11>.
enum BasisIndex : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

struct ReducedDensityMatrix {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();

  std::complex<double> operator()(int row, int col) const { return rho(row, col); }
  double max_deviation(const ReducedDensityMatrix& other) const;
  double hermiticity_residual() const;
  double trace_residual() const;
};

// How the per-mode Bose-Einstein weights are normalised in the oracle.
enum class BathNormalization {
  // e^{-beta w n} / sum_{m <= n_max} e^{-beta w m}: weights sum to one exactly.
  kTruncatedBoseEinstein,
  // e^{-beta w n} (1 - e^{-beta w n}): the partition function with the stray
  // occupation factor. Kept only as a negative control; it does not sum to one.
  kStrayOccupationFactor,
};

struct ThermalBathSpec {
  double beta = 1.0;
  int n_max = 3;            // per-mode Fock truncation of the background
  int n_modes_oracle = 1;   // field modes retained; must match the spectrum
  BathNormalization normalization = BathNormalization::kTruncatedBoseEinstein;
  std::size_t basis_cap = 1u << 16;  // cap on (n_max + 1)^n_modes_oracle

  void validate() const;
};

// Thermal weights of one mode of frequency omega over n = 0..n_max.
std::vector<double> mode_occupation_weights(double omega, double beta, int n_max,
                                            BathNormalization normalization);

// General (non-identical atoms) closed form; with f_aa == f_bb it reduces to
// the identical-atom matrix elements. Throws ContractViolation if |f| > 1.
ReducedDensityMatrix reduced_density_closed(const EntangledStateSpec& state,
                                            std::complex<double> f_aa,
                                            std::complex<double> f_bb);

// Brute-force reduced matrix: each atom carries its own dressing field in a
// thermal background; for every pair of background occupation configurations
// the single excitation is evolved with f_{0 nu}(t) on top of the spectator
// occupations, and the field modes of both atoms are traced out explicitly.
// Throws ContractViolation when the spectrum does not have bath.n_modes_oracle
// field modes, ResourceError when the background basis exceeds the cap.
ReducedDensityMatrix thermal_trace_oracle(const EntangledStateSpec& state,
                                          const DressedSpectrum& spectrum,
                                          const ThermalBathSpec& bath, double t);

struct EigenvalueReport {
  std::array<double, 4> eigenvalues{};  // ascending
  bool positive = true;                 // all >= -1e-10
};

EigenvalueReport positivity_check(const ReducedDensityMatrix& rho);

}  // namespace dressed
