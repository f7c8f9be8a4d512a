#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dressed {

// Physical inputs in natural units (hbar = c = k_B = 1).
struct ModelParams {
  double omega_bar = 1.0;  // bare atom frequency
  double g = 0.0;          // coupling frequency
  double radius = 1.0;     // cavity radius
  int n_modes = 1;         // field-mode cutoff N

  // Throws DomainError when an invariant is broken.
  void validate() const;
  double mode_spacing() const;
};

struct ModeLadder {
  std::vector<double> frequencies;  // omega_k = k * spacing, k = 1..N
  double spacing = 0.0;
};

// Symmetric (N+1)x(N+1) matrix of squared frequencies. Index 0 is the atom,
// indices 1..N the field modes.
struct CouplingMatrix {
  Eigen::MatrixXd matrix;

  Eigen::Index size() const { return matrix.rows(); }
};

ModeLadder build_mode_ladder(const ModelParams& params);

// Arrowhead form of sum_k (omega_k q_k - eta q_0)^2 + omega_bar^2 q_0^2 with
// eta = sqrt(2 g spacing):
//   M00 = omega_bar^2 + N eta^2,  Mkk = omega_k^2,  M0k = -eta omega_k.
CouplingMatrix build_coupling_matrix(const ModelParams& params, const ModeLadder& ladder);

// eta^2 = 2 g spacing.
double coupling_strength_squared(const ModelParams& params);

}  // namespace dressed
