#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "dressed/dynamics.hpp"
#include "dressed/errors.hpp"

using namespace dressed;

TEST_CASE("amplitudes at t = 0 are a unit vector on the atom") {
  const auto spectrum = solve_model({1.0, 0.05, 3.0, 30});
  const auto amps = amplitudes(spectrum, 0.0);
  CHECK(std::abs(amps.f[0] - 1.0) < 1e-12);
  for (std::size_t k = 1; k < amps.f.size(); ++k) {
    CHECK(std::abs(amps.f[k]) < 1e-12);
  }
}

TEST_CASE("decoupled atom only picks up a phase") {
  const auto spectrum = solve_model({1.7, 0.0, 2.0, 5});
  for (double t : {0.0, 0.3, 12.5, 400.0}) {
    const auto f00 = survival_amplitude(spectrum, t);
    CHECK(std::abs(f00 - std::polar(1.0, -1.7 * t)) < 1e-12);
    CHECK(std::norm(f00) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("single-mode evolution is a Rabi oscillation") {
  // Independent 2x2 solution: mixing angle from [[a, b], [b, d]].
  const ModelParams p{1.0, 0.02, std::numbers::pi, 1};
  const double a = 1.04;
  const double b = -0.2;
  const double d = 1.0;
  const double theta = 0.5 * std::atan2(2.0 * b, a - d);
  const double mean = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  const double w0 = std::sqrt(mean - r);
  const double w1 = std::sqrt(mean + r);

  const auto spectrum = solve_model(p);
  for (double t : {0.0, 0.5, 3.0, 17.0, 250.0}) {
    const double s2 = std::sin(2.0 * theta);
    const double sw = std::sin(0.5 * (w1 - w0) * t);
    const double expected = 1.0 - s2 * s2 * sw * sw;
    CHECK(std::abs(std::norm(survival_amplitude(spectrum, t)) - expected) < 1e-12);
  }
}

TEST_CASE("unitarity over random draws") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> g(1e-3, 0.2);
  std::uniform_real_distribution<double> radius(0.5, 300.0);
  std::uniform_int_distribution<int> modes(1, 150);
  std::uniform_real_distribution<double> time(0.0, 1000.0);
  for (int i = 0; i < 100; ++i) {
    const auto spectrum = solve_model({1.0, g(rng), radius(rng), modes(rng)});
    const auto amps = amplitudes(spectrum, time(rng));
    CHECK(amps.unitarity_residual() <= 1e-10);
    CHECK(std::abs(amps.f[0]) <= 1.0 + 1e-12);
  }
}

TEST_CASE("survival modulus ignores eigenvector signs") {
  auto spectrum = solve_model({1.0, 0.03, 20.0, 40});
  const double t = 37.25;
  const double reference = std::abs(survival_amplitude(spectrum, t));
  std::mt19937 rng(5);
  std::bernoulli_distribution flip(0.5);
  for (int trial = 0; trial < 10; ++trial) {
    auto flipped = spectrum;
    for (Eigen::Index s = 0; s < flipped.size(); ++s) {
      if (flip(rng)) {
        flipped.components.col(s) *= -1.0;
      }
    }
    CHECK(std::abs(survival_amplitude(flipped, t)) == reference);
  }
}

TEST_CASE("time reversal conjugates the amplitudes") {
  const auto spectrum = solve_model({1.0, 0.04, 9.0, 25});
  for (double t : {0.4, 5.0, 60.0}) {
    const auto forward = amplitudes(spectrum, t);
    const auto backward = amplitudes(spectrum, -t);
    for (std::size_t nu = 0; nu < forward.f.size(); ++nu) {
      CHECK(std::abs(backward.f[nu] - std::conj(forward.f[nu])) < 1e-12);
    }
  }
}

TEST_CASE("amplitude weights agree with per-time amplitudes") {
  const auto spectrum = solve_model({1.0, 0.05, 4.0, 12});
  const std::vector<double> grid{0.0, 1.5, 8.0, 33.0};
  const Eigen::MatrixXd w = amplitude_weights(spectrum, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto amps = amplitudes(spectrum, grid[j]);
    for (std::size_t nu = 0; nu < amps.f.size(); ++nu) {
      CHECK(std::abs(w(static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(j)) -
                     std::norm(amps.f[nu])) < 1e-14);
    }
  }
}

TEST_CASE("survival series") {
  const auto spectrum = solve_model({1.0, 0.01, 1.0, 16});
  SUBCASE("single sample at t = 0") {
    const std::vector<double> grid{0.0};
    const auto series = survival_series(spectrum, grid);
    REQUIRE(series.samples.size() == 1);
    CHECK(series.samples[0].t == 0.0);
    CHECK(series.samples[0].survival == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(series.samples[0].phase) < 1e-14);
  }
  SUBCASE("small cavity stays near one") {
    const auto grid = uniform_grid(200.0, 4001);
    const auto series = survival_series(spectrum, grid);
    for (const auto& s : series.samples) {
      CHECK(s.survival > 0.95);
      CHECK(s.survival <= 1.0);
    }
  }
  SUBCASE("grid contract") {
    const std::vector<double> empty;
    const std::vector<double> unordered{0.0, 2.0, 1.0};
    const std::vector<double> repeated{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(survival_series(spectrum, empty), ContractViolation);
    CHECK_THROWS_AS(survival_series(spectrum, unordered), ContractViolation);
    CHECK_THROWS_AS(survival_series(spectrum, repeated), ContractViolation);
  }
}

TEST_CASE("uniform grid") {
  const auto grid = uniform_grid(10.0, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == 0.0);
  CHECK(grid[2] == doctest::Approx(5.0));
  CHECK(grid.back() == 10.0);
  CHECK(uniform_grid(3.0, 1) == std::vector<double>{0.0});
  CHECK_THROWS_AS(uniform_grid(10.0, 0), DomainError);
}

TEST_CASE("decay fit") {
  SUBCASE("decoupled atom has zero rate and a perfect fit") {
    const auto spectrum = solve_model({1.0, 0.0, 50.0, 20});
    const auto grid = uniform_grid(100.0, 501);
    const auto fit = decay_rate_fit(survival_series(spectrum, grid), {5.0, 80.0});
    CHECK(fit.rate == 0.0);
    CHECK(fit.r_squared == 1.0);
  }
  SUBCASE("synthetic exponential") {
    SurvivalSeries series;
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.5 * i;
      series.samples.push_back({t, std::exp(-0.07 * t), 0.0});
    }
    const auto fit = decay_rate_fit(series, {2.0, 40.0});
    CHECK(fit.rate == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_samples == 77);
  }
  SUBCASE("error paths") {
    SurvivalSeries series;
    for (int i = 0; i <= 10; ++i) {
      series.samples.push_back({static_cast<double>(i), i == 6 ? 0.0 : 0.5, 0.0});
    }
    CHECK_THROWS_AS(decay_rate_fit(series, {1.0, 2.5}), InsufficientDataError);
    CHECK_THROWS_AS(decay_rate_fit(series, {4.0, 8.0}), WindowError);
    CHECK_THROWS_AS(decay_rate_fit(series, {4.0, 20.0}), ContractViolation);
  }
}

TEST_CASE("finite-cavity revival spoils the exponential fit") {
  // Round-trip time 2R = 1000 pi; the window straddles the first revival.
  const double radius = 500.0 * std::numbers::pi;
  const auto spectrum = solve_model({1.0, 0.01, radius, 1000});
  const auto grid = uniform_grid(3600.0, 3601);
  const auto series = survival_series(spectrum, grid);
  const auto clean = decay_rate_fit(series, {5.0, 80.0});
  CHECK(clean.r_squared >= 0.999);
  const auto revival = decay_rate_fit(series, {2.0 * radius - 300.0, 2.0 * radius + 400.0});
  CHECK(revival.r_squared < 0.999);
}

TEST_CASE("mode-cutoff convergence is first order") {
  // The dressed-atom weight carries a tail of order 2 g / (N spacing), so each
  // doubling of N roughly halves the change in |f_00|.
  ModelParams p{1.0, 0.01, 1.0, 1};
  const auto grid = uniform_grid(50.0, 201);
  auto max_change = [&](int n) {
    p.n_modes = n;
    const auto coarse = solve_model(p);
    p.n_modes = 2 * n;
    const auto fine = solve_model(p);
    double change = 0.0;
    for (double t : grid) {
      change = std::max(change, std::abs(std::abs(survival_amplitude(coarse, t)) -
                                         std::abs(survival_amplitude(fine, t))));
    }
    return change;
  };
  const double c16 = max_change(16);
  const double c32 = max_change(32);
  const double c64 = max_change(64);
  CHECK(c32 < 0.7 * c16);
  CHECK(c64 < 0.7 * c32);

  // At vanishing coupling the stated 1e-6 tolerance is met immediately.
  ModelParams weak{1.0, 1e-8, 1.0, 1};
  const auto report = survival_convergence(weak, grid, 1e-6, 512);
  CHECK(report.max_change < 1e-6);
  CHECK(report.n_modes * weak.mode_spacing() >= 3.0 * weak.omega_bar);
}
