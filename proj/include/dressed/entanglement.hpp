#pragma once

#include "dressed/density.hpp"

namespace dressed {

struct EntanglementMeasures {
  double concurrence = 0.0;
  double eof = 0.0;         // entanglement of formation, bits
  double negativity = 0.0;  // ||rho^{T_B}||_1 - 1
};

// Wootters concurrence max(0, l1 - l2 - l3 - l4), with l_i the singular values
// of X^T (sy x sy) X for rho = X X^dagger. Throws ContractViolation if rho has
// an eigenvalue below -1e-10.
double concurrence(const ReducedDensityMatrix& rho);

// h((1 + sqrt(1 - C^2)) / 2), h the binary entropy in bits. DomainError if C
// lies outside [0, 1].
double entanglement_of_formation(double concurrence);

// Sum of |negative eigenvalues| of the partial transpose on B, times two.
double negativity(const ReducedDensityMatrix& rho);

EntanglementMeasures measures(const ReducedDensityMatrix& rho);

// Closed forms on the identical-atom family, where rho depends on xi and the
// survival probability |f_00|^2 only:
//   C = 2 sqrt(xi (1 - xi)) s,   N = sqrt((1 - s)^2 + C^2) - (1 - s).
EntanglementMeasures measures_identical_atoms(double xi, double survival);

}  // namespace dressed
