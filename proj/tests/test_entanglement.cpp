#include <cmath>
#include <complex>
#include <random>
#include <vector>
#include <algorithm>
#include <functional>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "dressed/dynamics.hpp"
#include "dressed/entanglement.hpp"
#include "dressed/errors.hpp"

using namespace dressed;
using cd = std::complex<double>;

namespace {

ReducedDensityMatrix family(double xi, double phi, double survival) {
  const cd f = std::sqrt(survival);
  return reduced_density_closed({xi, phi}, f, f);
}

// Binary entropy evaluated with natural logs, independent of the library path.
double binary_entropy_bits(double p) {
  return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p)) / std::log(2.0);
}

// Concurrence from the square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double wootters_concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4cd product = rho * flip * rho.conjugate() * flip;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product);
  std::vector<double> lambda;
  for (int i = 0; i < 4; ++i) {
    lambda.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i).real())));
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace

TEST_CASE("Bell state scores one on every measure") {
  const auto m = measures(family(0.5, 0.0, 1.0));
  CHECK(m.concurrence == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.eof == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.negativity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("product-state family is unentangled") {
  for (double xi : {0.0, 1.0}) {
    for (double s : {1.0, 0.6, 0.1, 0.0}) {
      const auto m = measures(family(xi, 0.3, s));
      CHECK(m.concurrence < 1e-12);
      CHECK(m.eof < 1e-10);
      CHECK(m.negativity < 1e-12);
    }
  }
}

TEST_CASE("half-decayed Bell state") {
  const auto rho = family(0.5, 0.0, 0.5);
  const double c = concurrence(rho);
  CHECK(std::abs(c - 0.5) < 1e-12);
  CHECK(std::abs(c - 2.0 * std::abs(rho(k01, k10))) < 1e-12);

  // Partial transpose block [[a, z], [z, 0]] with a = 1/2, z = 1/4.
  const double a = 0.5;
  const double z = 0.25;
  const double lambda_min = 0.5 * (a - std::sqrt(a * a + 4.0 * z * z));
  CHECK(lambda_min == doctest::Approx(-0.10355).epsilon(1e-4));
  CHECK(std::abs(negativity(rho) + 2.0 * lambda_min) < 1e-12);
  CHECK(negativity(rho) == doctest::Approx(0.20711).epsilon(1e-4));
}

TEST_CASE("entanglement of formation") {
  CHECK(entanglement_of_formation(0.0) == 0.0);
  CHECK(entanglement_of_formation(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double expected = binary_entropy_bits(0.5 * (1.0 + std::sqrt(0.75)));
  CHECK(std::abs(entanglement_of_formation(0.5) - expected) < 1e-14);
  CHECK(entanglement_of_formation(0.5) == doctest::Approx(0.3546).epsilon(1e-3));
  double previous = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double e = entanglement_of_formation(i / 100.0);
    CHECK(e > previous);
    previous = e;
  }
  CHECK_THROWS_AS(entanglement_of_formation(-0.01), DomainError);
  CHECK_THROWS_AS(entanglement_of_formation(1.01), DomainError);
}

TEST_CASE("Werner states exercise the general concurrence path") {
  // p |Psi-><Psi-| + (1 - p) I/4 has C = max(0, (3p - 1)/2).
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    ReducedDensityMatrix rho;
    rho.rho = Eigen::Matrix4cd::Identity() * ((1.0 - p) / 4.0);
    rho.rho(k01, k01) += 0.5 * p;
    rho.rho(k10, k10) += 0.5 * p;
    rho.rho(k01, k10) -= 0.5 * p;
    rho.rho(k10, k01) -= 0.5 * p;
    CHECK(std::abs(concurrence(rho) - std::max(0.0, 0.5 * (3.0 * p - 1.0))) < 1e-12);
  }
}

TEST_CASE("general path agrees with the identical-atom closed forms") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 6.28);
  for (int i = 0; i < 200; ++i) {
    const double xi = unit(rng);
    const double s = unit(rng);
    const auto general = measures(family(xi, angle(rng), s));
    const auto closed = measures_identical_atoms(xi, s);
    CHECK(std::abs(general.concurrence - closed.concurrence) < 1e-12);
    CHECK(std::abs(general.eof - closed.eof) < 1e-10);
    CHECK(std::abs(general.negativity - closed.negativity) < 1e-12);
    // Partial transposition detects every entangled member of the family.
    CHECK((closed.negativity > 0.0) == (closed.concurrence > 0.0));
  }
}

TEST_CASE("measures do not depend on the relative phase") {
  for (double xi : {0.1, 0.5, 0.8}) {
    const auto reference = measures(family(xi, 0.0, 0.7));
    for (double phi : {0.5, 1.5, 3.1, 4.7, 6.2}) {
      const auto m = measures(family(xi, phi, 0.7));
      CHECK(std::abs(m.concurrence - reference.concurrence) < 1e-12);
      CHECK(std::abs(m.eof - reference.eof) < 1e-10);
      CHECK(std::abs(m.negativity - reference.negativity) < 1e-12);
    }
  }
}

TEST_CASE("concurrence follows the survival probability") {
  const auto spectrum = solve_model({1.0, 0.05, 6.0, 40});
  const double xi = 0.3;
  const double c0 = 2.0 * std::sqrt(xi * (1.0 - xi));
  for (double t : {0.0, 2.0, 15.0, 90.0}) {
    const auto f00 = survival_amplitude(spectrum, t);
    const auto rho = reduced_density_closed({xi, 0.4}, f00, f00);
    CHECK(std::abs(concurrence(rho) - c0 * std::norm(f00)) < 1e-12);
  }
}

TEST_CASE("measures from the thermal oracle are temperature independent") {
  const auto spectrum = solve_model({1.0, 0.08, 1.7, 2});
  const EntangledStateSpec state{0.4, 0.9};
  ThermalBathSpec bath;
  bath.n_modes_oracle = 2;
  bath.n_max = 3;
  for (double t : {0.5, 4.0}) {
    bath.beta = 0.2;
    const auto reference = measures(thermal_trace_oracle(state, spectrum, bath, t));
    for (double beta : {1.0, 5.0, 30.0}) {
      bath.beta = beta;
      const auto m = measures(thermal_trace_oracle(state, spectrum, bath, t));
      CHECK(std::abs(m.concurrence - reference.concurrence) < 1e-12);
      CHECK(std::abs(m.eof - reference.eof) < 1e-12);
      CHECK(std::abs(m.negativity - reference.negativity) < 1e-12);
    }
  }
}

TEST_CASE("non-positive input is rejected") {
  ReducedDensityMatrix bad;
  bad.rho(0, 0) = 1.3;
  bad.rho(3, 3) = -0.3;
  CHECK_THROWS_AS(concurrence(bad), ContractViolation);
  CHECK_THROWS_AS(negativity(bad), ContractViolation);
  CHECK_THROWS_AS(measures_identical_atoms(1.2, 0.5), DomainError);
}

TEST_CASE("spin-flip concurrence agrees with the Wootters eigenvalue form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double xi = unit(rng);
    const double phi = 6.0 * unit(rng);
    const cd fa = std::polar(std::sqrt(unit(rng)), 6.0 * unit(rng));
    const cd fb = std::polar(std::sqrt(unit(rng)), 6.0 * unit(rng));
    const auto rho = reduced_density_closed({xi, phi}, fa, fb);
    CHECK(concurrence(rho) == doctest::Approx(wootters_concurrence(rho.rho)).epsilon(1e-8));
  }
  // Mixed full-rank state: Werner state with p = 0.7 has C = (3p - 1) / 2.
  Eigen::Matrix4cd werner = Eigen::Matrix4cd::Identity() * (0.3 / 4.0);
  werner(1, 1) += 0.35;
  werner(2, 2) += 0.35;
  werner(1, 2) += 0.35;
  werner(2, 1) += 0.35;
  CHECK(wootters_concurrence(werner) == doctest::Approx(0.55).epsilon(1e-10));
  CHECK(concurrence(ReducedDensityMatrix{werner}) == doctest::Approx(0.55).epsilon(1e-10));
}
