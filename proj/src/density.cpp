#include "dressed/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "dressed/dynamics.hpp"
#include "dressed/errors.hpp"

namespace dressed {

void EntangledStateSpec::validate() const {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw DomainError("xi must lie in [0, 1], got " + std::to_string(xi));
  }
  if (!std::isfinite(phi)) {
    throw DomainError("phi must be finite");
  }
}

void ThermalBathSpec::validate() const {
  if (!(beta > 0.0)) {
    throw DomainError("beta must be positive");
  }
  if (n_max < 1) {
    throw DomainError("n_max must be at least 1");
  }
  if (n_modes_oracle < 1) {
    throw DomainError("n_modes_oracle must be at least 1");
  }
}

double ReducedDensityMatrix::max_deviation(const ReducedDensityMatrix& other) const {
  return (rho - other.rho).cwiseAbs().maxCoeff();
}

double ReducedDensityMatrix::hermiticity_residual() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double ReducedDensityMatrix::trace_residual() const { return std::abs(rho.trace() - 1.0); }

std::vector<double> mode_occupation_weights(double omega, double beta, int n_max,
                                            BathNormalization normalization) {
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
  switch (normalization) {
    case BathNormalization::kTruncatedBoseEinstein: {
      double total = 0.0;
      for (int n = 0; n <= n_max; ++n) {
        w[static_cast<std::size_t>(n)] = std::exp(-beta * omega * n);
        total += w[static_cast<std::size_t>(n)];
      }
      for (double& x : w) {
        x /= total;
      }
      break;
    }
    case BathNormalization::kStrayOccupationFactor:
      for (int n = 0; n <= n_max; ++n) {
        const double boltzmann = std::exp(-beta * omega * n);
        w[static_cast<std::size_t>(n)] = boltzmann * (1.0 - boltzmann);
      }
      break;
  }
  return w;
}

ReducedDensityMatrix reduced_density_closed(const EntangledStateSpec& state,
                                            std::complex<double> f_aa,
                                            std::complex<double> f_bb) {
  state.validate();
  constexpr double kSlack = 1e-12;
  if (std::abs(f_aa) > 1.0 + kSlack || std::abs(f_bb) > 1.0 + kSlack) {
    throw ContractViolation("amplitude modulus exceeds one");
  }
  const double xi = state.xi;
  const double pa = std::norm(f_aa);
  const double pb = std::norm(f_bb);
  const std::complex<double> coherence =
      std::sqrt(xi * (1.0 - xi)) * std::polar(1.0, -state.phi) * f_aa * std::conj(f_bb);

  ReducedDensityMatrix out;
  out.rho(k00, k00) = 1.0 - xi * pa - (1.0 - xi) * pb;
  out.rho(k01, k01) = (1.0 - xi) * pb;
  out.rho(k10, k10) = xi * pa;
  out.rho(k10, k01) = coherence;
  out.rho(k01, k10) = std::conj(coherence);
  return out;
}

namespace {

// Field Fock space of one atom's dressing cloud. Each mode holds up to
// n_max + 1 quanta so an excitation fits on top of any background.
class FieldSpace {
public:
  FieldSpace(int n_modes, int n_max) : n_modes_(n_modes), dim_per_mode_(n_max + 2) {}

  std::size_t index(const std::vector<int>& occupations) const {
    std::size_t idx = 0;
    for (int k = n_modes_ - 1; k >= 0; --k) {
      idx = idx * static_cast<std::size_t>(dim_per_mode_) +
            static_cast<std::size_t>(occupations[static_cast<std::size_t>(k)]);
    }
    return idx;
  }

private:
  int n_modes_;
  int dim_per_mode_;
};

// Sparse state of (atom qubit) x (field); key = (atom level, field index).
using SparseState = std::vector<std::pair<std::pair<int, std::size_t>, std::complex<double>>>;

// |0; n>: atom in its ground level, field in the background.
SparseState ground_state(const FieldSpace& space, const std::vector<int>& background) {
  return {{{0, space.index(background)}, 1.0}};
}

// |1(t); n> = sum_nu f_{0 nu}(t) |1_nu; n>: nu = 0 puts the quantum on the atom,
// nu = k >= 1 adds it to field mode k on top of the spectator background.
SparseState excited_state(const FieldSpace& space, const std::vector<int>& background,
                          const AmplitudeSet& amps) {
  SparseState out;
  out.reserve(amps.f.size());
  out.push_back({{1, space.index(background)}, amps.f[0]});
  std::vector<int> shifted = background;
  for (std::size_t k = 1; k < amps.f.size(); ++k) {
    ++shifted[k - 1];
    out.push_back({{0, space.index(shifted)}, amps.f[k]});
    --shifted[k - 1];
  }
  return out;
}

// Odometer over all background configurations (n_1..n_M), 0 <= n_i <= n_max.
bool next_background(std::vector<int>& occ, int n_max) {
  for (int& n : occ) {
    if (n < n_max) {
      ++n;
      return true;
    }
    n = 0;
  }
  return false;
}

}  // namespace

ReducedDensityMatrix thermal_trace_oracle(const EntangledStateSpec& state,
                                          const DressedSpectrum& spectrum,
                                          const ThermalBathSpec& bath, double t) {
  state.validate();
  bath.validate();
  const int n_modes = bath.n_modes_oracle;
  if (spectrum.n_field_modes() != n_modes) {
    throw ContractViolation("oracle spectrum has " + std::to_string(spectrum.n_field_modes()) +
                            " field modes, bath expects " + std::to_string(n_modes));
  }
  double basis = 1.0;
  for (int k = 0; k < n_modes; ++k) {
    basis *= bath.n_max + 1;
  }
  if (basis > static_cast<double>(bath.basis_cap)) {
    throw ResourceError("oracle background basis (n_max + 1)^n_modes = (" +
                        std::to_string(bath.n_max + 1) + ")^" + std::to_string(n_modes) +
                        " exceeds cap " + std::to_string(bath.basis_cap));
  }

  std::vector<std::vector<double>> mode_weights;
  for (int k = 0; k < n_modes; ++k) {
    mode_weights.push_back(mode_occupation_weights(spectrum.field_frequencies(k), bath.beta,
                                                   bath.n_max, bath.normalization));
  }
  auto background_weight = [&](const std::vector<int>& occ) {
    double w = 1.0;
    for (int k = 0; k < n_modes; ++k) {
      w *= mode_weights[static_cast<std::size_t>(k)][static_cast<std::size_t>(occ[static_cast<std::size_t>(k)])];
    }
    return w;
  };

  const AmplitudeSet amps = amplitudes(spectrum, t);
  const FieldSpace space(n_modes, bath.n_max);
  const double a = std::sqrt(state.xi);
  const std::complex<double> b = std::sqrt(1.0 - state.xi) * std::polar(1.0, state.phi);

  ReducedDensityMatrix out;
  std::vector<int> occ_a(static_cast<std::size_t>(n_modes), 0);
  do {
    const double w_a = background_weight(occ_a);
    const SparseState excited_a = excited_state(space, occ_a, amps);
    const SparseState ground_a = ground_state(space, occ_a);

    std::vector<int> occ_b(static_cast<std::size_t>(n_modes), 0);
    do {
      const double w_b = background_weight(occ_b);
      const SparseState excited_b = excited_state(space, occ_b, amps);
      const SparseState ground_b = ground_state(space, occ_b);

      // Joint amplitudes grouped by the traced field labels (k, q); each
      // entry holds the 4-vector over atom levels (p_A, p_B).
      std::map<std::pair<std::size_t, std::size_t>, Eigen::Vector4cd> blocks;
      auto add = [&](const SparseState& sa, const SparseState& sb, std::complex<double> coeff) {
        for (const auto& [ka, za] : sa) {
          for (const auto& [kb, zb] : sb) {
            auto [it, inserted] =
                blocks.try_emplace({ka.second, kb.second}, Eigen::Vector4cd::Zero());
            it->second(2 * ka.first + kb.first) += coeff * za * zb;
          }
        }
      };
      add(excited_a, ground_b, a);
      add(ground_a, excited_b, b);

      // rho_{p,r} += w_n w_m sum_{k,q} <p,k,q|Psi><Psi|r,k,q>
      Eigen::Matrix4cd contribution = Eigen::Matrix4cd::Zero();
      for (const auto& [labels, v] : blocks) {
        contribution += v * v.adjoint();
      }
      out.rho += (w_a * w_b) * contribution;
    } while (next_background(occ_b, bath.n_max));
  } while (next_background(occ_a, bath.n_max));
  return out;
}

EigenvalueReport positivity_check(const ReducedDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho.rho, Eigen::EigenvaluesOnly);
  EigenvalueReport report;
  for (int i = 0; i < 4; ++i) {
    report.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }
  report.positive = report.eigenvalues[0] >= -1e-10;
  return report;
}

}  // namespace dressed
