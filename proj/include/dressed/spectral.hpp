#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dressed/model.hpp"

namespace dressed {

// Dressed normal modes of the coupled atom-field system.
//
// components(nu, s) is the weight t_nu^s of eigenvector s on bare coordinate
// nu (nu = 0 atom, nu >= 1 field modes). Columns are sorted by ascending
// frequency and each is signed so that t_0^s >= 0.
struct DressedSpectrum {
  Eigen::VectorXd eigenvalues;       // Omega_s^2
  Eigen::VectorXd omega;             // Omega_s
  Eigen::MatrixXd components;
  Eigen::VectorXd field_frequencies; // bare omega_k, k = 1..N (entry k-1)
  double reconstruction_residual = 0.0;  // max|M - V L V^T| / max|M|
  double orthogonality_residual = 0.0;   // max|V^T V - I|

  Eigen::Index size() const { return omega.size(); }
  Eigen::Index n_field_modes() const { return field_frequencies.size(); }
};

// Throws ContractViolation for a non-symmetric input and ModelInstabilityError
// when an eigenvalue is not strictly positive.
DressedSpectrum diagonalize(const CouplingMatrix& matrix);

// Convenience: ladder + coupling matrix + diagonalize.
DressedSpectrum solve_model(const ModelParams& params);

// Roots of omega_bar^2 - W^2 = sum_k eta^2 W^2 / (omega_k^2 - W^2), one per
// pole-separated interval, found by bisection. Returns the N+1 frequencies W
// in ascending order. Requires g > 0. Throws BracketingError when a root lands
// within 1e-12 (relative) of a pole.
std::vector<double> secular_roots(const ModelParams& params, const ModeLadder& ladder);

// |F(W^2)| divided by the sum of magnitudes of the terms of F.
double secular_residual(const ModelParams& params, const ModeLadder& ladder, double omega);

// Number of eigenvalues below omega_1^2, inside each (omega_k^2, omega_{k+1}^2),
// and above omega_N^2; N+1 entries. Eigenvalues equal to a pole count nowhere.
std::vector<int> interlacing_counts(const Eigen::VectorXd& eigenvalues, const ModeLadder& ladder);

}  // namespace dressed
