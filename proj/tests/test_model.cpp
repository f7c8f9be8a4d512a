#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "dressed/errors.hpp"
#include "dressed/model.hpp"
#include "dressed/spectral.hpp"
#include "dressed/units.hpp"

using namespace dressed;

TEST_CASE("natural_from_si reproduces the SI anchors") {
  // Direct evaluation with CODATA hbar and k_B.
  const double hbar = 1.054571817e-34;
  const double kb = 1.380649e-23;
  const double expected = hbar * 4.0e14 / (kb * 300.0);

  const auto scales = units::natural_from_si(4.0e14, 1e-6, 300.0);
  CHECK(scales.omega == 1.0);
  CHECK(scales.beta * scales.omega == doctest::Approx(expected).epsilon(1e-14));
  CHECK(scales.beta == doctest::Approx(10.19).epsilon(1e-3));
  CHECK(scales.radius == doctest::Approx(4.0e14 * 1e-6 / 299792458.0).epsilon(1e-14));
  CHECK(scales.radius == doctest::Approx(1.334).epsilon(1e-3));
}

TEST_CASE("natural_from_si gives beta omega = ln 2 at the matching temperature") {
  const double omega = 2.5e13;
  const double temperature = units::kHbar * omega / (units::kBoltzmann * std::numbers::ln2);
  const auto scales = units::natural_from_si(omega, 1e-5, temperature);
  CHECK(std::abs(scales.beta * scales.omega - std::numbers::ln2) < 1e-14);
}

TEST_CASE("natural_from_si rejects nonpositive inputs") {
  CHECK_THROWS_AS(units::natural_from_si(0.0, 1e-6, 300.0), DomainError);
  CHECK_THROWS_AS(units::natural_from_si(4e14, -1e-6, 300.0), DomainError);
  CHECK_THROWS_AS(units::natural_from_si(4e14, 1e-6, 0.0), DomainError);
}

TEST_CASE("SI round trip is exact to 1e-12") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_omega(10.0, 16.0);
  std::uniform_real_distribution<double> log_radius(-8.0, 0.0);
  std::uniform_real_distribution<double> log_temperature(-1.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double omega = std::pow(10.0, log_omega(rng));
    const double radius = std::pow(10.0, log_radius(rng));
    const double temperature = std::pow(10.0, log_temperature(rng));
    const auto back = units::si_from_natural(units::natural_from_si(omega, radius, temperature), omega);
    CHECK(std::abs(back.omega / omega - 1.0) < 1e-12);
    CHECK(std::abs(back.radius / radius - 1.0) < 1e-12);
    CHECK(std::abs(back.temperature / temperature - 1.0) < 1e-12);
  }
}

TEST_CASE("ModelParams validation") {
  CHECK_NOTHROW(ModelParams{1.0, 0.0, 1.0, 1}.validate());
  CHECK_THROWS_AS(ModelParams({0.0, 0.1, 1.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, -0.1, 1.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, 0.1, 0.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, 0.1, 1.0, 0}).validate(), DomainError);
}

TEST_CASE("mode ladder") {
  SUBCASE("radius pi") {
    const auto ladder = build_mode_ladder({1.0, 0.0, std::numbers::pi, 3});
    REQUIRE(ladder.frequencies.size() == 3);
    CHECK(ladder.frequencies[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ladder.frequencies[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(ladder.frequencies[2] == doctest::Approx(3.0).epsilon(1e-15));
  }
  SUBCASE("radius pi/2") {
    const auto ladder = build_mode_ladder({1.0, 0.0, std::numbers::pi / 2, 2});
    CHECK(ladder.spacing == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(ladder.frequencies[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(ladder.frequencies[1] == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("free-space ladder spans twice omega_bar") {
    const auto ladder = build_mode_ladder({1.0, 0.01, 500.0 * std::numbers::pi, 1000});
    CHECK(ladder.frequencies.back() == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t k = 1; k < ladder.frequencies.size(); ++k) {
      CHECK(ladder.frequencies[k] > ladder.frequencies[k - 1]);
    }
  }
}

TEST_CASE("coupling matrix") {
  SUBCASE("decoupled limit is diagonal") {
    const ModelParams p{1.3, 0.0, 2.0, 4};
    const auto ladder = build_mode_ladder(p);
    const auto m = build_coupling_matrix(p, ladder).matrix;
    CHECK(m(0, 0) == doctest::Approx(1.69));
    for (int k = 1; k <= 4; ++k) {
      CHECK(m(k, k) == doctest::Approx(ladder.frequencies[k - 1] * ladder.frequencies[k - 1]));
    }
    CHECK((m - Eigen::MatrixXd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("two-by-two worked example") {
    const ModelParams p{1.0, 0.02, std::numbers::pi, 1};
    CHECK(coupling_strength_squared(p) == doctest::Approx(0.04).epsilon(1e-15));
    const auto m = build_coupling_matrix(p, build_mode_ladder(p)).matrix;
    CHECK(m(0, 0) == doctest::Approx(1.04).epsilon(1e-15));
    CHECK(m(0, 1) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(m(1, 0) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(m(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("symmetric and positive definite for random parameters") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> omega(0.1, 5.0);
    std::uniform_real_distribution<double> g(0.0, 0.5);
    std::uniform_real_distribution<double> radius(0.2, 400.0);
    std::uniform_int_distribution<int> modes(1, 120);
    for (int i = 0; i < 100; ++i) {
      const ModelParams p{omega(rng), g(rng), radius(rng), modes(rng)};
      const auto m = build_coupling_matrix(p, build_mode_ladder(p));
      CHECK((m.matrix - m.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
      const auto spectrum = diagonalize(m);
      CHECK(spectrum.eigenvalues.minCoeff() > 0.0);
    }
  }
}
