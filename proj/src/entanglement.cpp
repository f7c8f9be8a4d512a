#include "dressed/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {
namespace {

constexpr double kPositivityTolerance = 1e-10;
// Eigenvalues of rho below this are rank-deficiency noise and are dropped
// before taking square roots.
constexpr double kRankFloor = 1e-14;

Eigen::Matrix4cd spin_flip() {
  // sigma_y (x) sigma_y in the |00>, |01>, |10>, |11> basis.
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

}  // namespace

double concurrence(const ReducedDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho.rho);
  const Eigen::Vector4d p = solver.eigenvalues();
  if (p(0) < -kPositivityTolerance) {
    throw ContractViolation("density matrix is not positive semidefinite (min eigenvalue " +
                            std::to_string(p(0)) + ")");
  }
  Eigen::Matrix4cd x = solver.eigenvectors();
  for (int i = 0; i < 4; ++i) {
    x.col(i) *= p(i) > kRankFloor ? std::sqrt(p(i)) : 0.0;
  }
  const Eigen::Matrix4cd tau = x.transpose() * spin_flip() * x;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double entanglement_of_formation(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainError("concurrence must lie in [0, 1], got " + std::to_string(c));
  }
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double negativity(const ReducedDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> check(rho.rho, Eigen::EigenvaluesOnly);
  if (check.eigenvalues()(0) < -kPositivityTolerance) {
    throw ContractViolation("density matrix is not positive semidefinite");
  }
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int ap = 0; ap < 2; ++ap) {
        for (int bp = 0; bp < 2; ++bp) {
          pt(2 * a + b, 2 * ap + bp) = rho.rho(2 * a + bp, 2 * ap + b);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt, Eigen::EigenvaluesOnly);
  double negative = 0.0;
  for (int i = 0; i < 4; ++i) {
    negative += std::min(0.0, solver.eigenvalues()(i));
  }
  return -2.0 * negative;
}

EntanglementMeasures measures(const ReducedDensityMatrix& rho) {
  EntanglementMeasures m;
  m.concurrence = std::min(1.0, concurrence(rho));
  m.eof = entanglement_of_formation(m.concurrence);
  m.negativity = negativity(rho);
  return m;
}

EntanglementMeasures measures_identical_atoms(double xi, double survival) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw DomainError("xi must lie in [0, 1]");
  }
  if (!(survival >= 0.0 && survival <= 1.0)) {
    throw DomainError("survival probability must lie in [0, 1]");
  }
  EntanglementMeasures m;
  m.concurrence = 2.0 * std::sqrt(xi * (1.0 - xi)) * survival;
  m.eof = entanglement_of_formation(std::min(1.0, m.concurrence));
  const double ground = 1.0 - survival;
  m.negativity = std::hypot(ground, m.concurrence) - ground;
  return m;
}

}  // namespace dressed
