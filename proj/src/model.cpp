#include "dressed/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {

void ModelParams::validate() const {
  if (!(omega_bar > 0.0) || !std::isfinite(omega_bar)) {
    throw DomainError("omega_bar must be positive and finite");
  }
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw DomainError("coupling g must be nonnegative and finite");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("radius must be positive and finite");
  }
  if (n_modes < 1) {
    throw DomainError("n_modes must be at least 1, got " + std::to_string(n_modes));
  }
}

double ModelParams::mode_spacing() const { return std::numbers::pi / radius; }

double coupling_strength_squared(const ModelParams& params) {
  return 2.0 * params.g * params.mode_spacing();
}

ModeLadder build_mode_ladder(const ModelParams& params) {
  params.validate();
  ModeLadder ladder;
  ladder.spacing = params.mode_spacing();
  ladder.frequencies.reserve(static_cast<std::size_t>(params.n_modes));
  for (int k = 1; k <= params.n_modes; ++k) {
    ladder.frequencies.push_back(k * ladder.spacing);
  }
  return ladder;
}

CouplingMatrix build_coupling_matrix(const ModelParams& params, const ModeLadder& ladder) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(ladder.frequencies.size());
  const double eta2 = coupling_strength_squared(params);
  const double eta = std::sqrt(eta2);

  CouplingMatrix out{Eigen::MatrixXd::Zero(n + 1, n + 1)};
  auto& m = out.matrix;
  m(0, 0) = params.omega_bar * params.omega_bar + static_cast<double>(n) * eta2;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const double wk = ladder.frequencies[static_cast<std::size_t>(k - 1)];
    m(k, k) = wk * wk;
    m(0, k) = -eta * wk;
    m(k, 0) = -eta * wk;
  }
  return out;
}

}  // namespace dressed
