#include "dressed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {

DressedSpectrum diagonalize(const CouplingMatrix& matrix) {
  const Eigen::MatrixXd& m = matrix.matrix;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ContractViolation("coupling matrix must be square and nonempty");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-14 * scale) {
    throw ContractViolation("coupling matrix is not symmetric (max asymmetry " +
                            std::to_string(asymmetry) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ModelInstabilityError("eigensolver failed to converge");
  }

  DressedSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.components = solver.eigenvectors();
  for (Eigen::Index s = 0; s < out.eigenvalues.size(); ++s) {
    if (!(out.eigenvalues(s) > 0.0)) {
      throw ModelInstabilityError("non-positive eigenvalue " + std::to_string(out.eigenvalues(s)) +
                                  " at index " + std::to_string(s));
    }
    // Fix the sign so that the atom component is nonnegative.
    Eigen::Index pivot = 0;
    if (out.components(0, s) == 0.0) {
      out.components.col(s).cwiseAbs().maxCoeff(&pivot);
    }
    if (out.components(pivot, s) < 0.0) {
      out.components.col(s) *= -1.0;
    }
  }
  out.omega = out.eigenvalues.cwiseSqrt();

  const Eigen::Index n = m.rows();
  out.field_frequencies = m.diagonal().tail(n - 1).cwiseSqrt();

  const Eigen::MatrixXd rebuilt =
      out.components * out.eigenvalues.asDiagonal() * out.components.transpose();
  out.reconstruction_residual = (m - rebuilt).cwiseAbs().maxCoeff() / scale;
  out.orthogonality_residual =
      (out.components.transpose() * out.components - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  return out;
}

DressedSpectrum solve_model(const ModelParams& params) {
  const ModeLadder ladder = build_mode_ladder(params);
  return diagonalize(build_coupling_matrix(params, ladder));
}

namespace {

// Secular function F(lambda) = a - lambda - eta^2 lambda sum_k 1/(p_k - lambda),
// evaluated at lambda = origin + delta with the pole differences p_k - origin
// formed from the frequencies to avoid cancellation.
class SecularFunction {
public:
  SecularFunction(const ModelParams& params, const ModeLadder& ladder)
      : a_(params.omega_bar * params.omega_bar),
        eta2_(coupling_strength_squared(params)),
        freqs_(ladder.frequencies) {}

  std::size_t n_poles() const { return freqs_.size(); }
  double pole(std::size_t k) const { return freqs_[k] * freqs_[k]; }

  // origin_pole < 0 means the origin is lambda = 0.
  double value(long origin_pole, double delta, double* magnitude = nullptr) const {
    const double origin = origin_pole < 0 ? 0.0 : pole(static_cast<std::size_t>(origin_pole));
    const double lambda = origin + delta;
    double sum = 0.0;
    double abs_sum = 0.0;
    for (std::size_t k = 0; k < freqs_.size(); ++k) {
      double gap;
      if (origin_pole < 0) {
        gap = pole(k) - delta;
      } else {
        const double wj = freqs_[static_cast<std::size_t>(origin_pole)];
        gap = (freqs_[k] - wj) * (freqs_[k] + wj) - delta;
      }
      sum += 1.0 / gap;
      abs_sum += 1.0 / std::abs(gap);
    }
    if (magnitude != nullptr) {
      *magnitude = a_ + std::abs(lambda) + eta2_ * std::abs(lambda) * abs_sum;
    }
    return a_ - lambda - eta2_ * lambda * sum;
  }

private:
  double a_;
  double eta2_;
  const std::vector<double>& freqs_;
};

double gershgorin_upper(const ModelParams& params, const ModeLadder& ladder) {
  const double eta2 = coupling_strength_squared(params);
  const double eta = std::sqrt(eta2);
  const auto n = static_cast<double>(ladder.frequencies.size());
  double row0 = params.omega_bar * params.omega_bar + n * eta2;
  double best = 0.0;
  for (double w : ladder.frequencies) {
    row0 += eta * w;
    best = std::max(best, w * w + eta * w);
  }
  return std::max(best, row0);
}

// Bisection on delta over [lo, hi] where F(lo) > 0 > F(hi).
double bisect(const SecularFunction& f, long origin_pole, double lo, double hi) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (f.value(origin_pole, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double flo = std::abs(f.value(origin_pole, lo));
  const double fhi = std::abs(f.value(origin_pole, hi));
  return flo <= fhi ? lo : hi;
}

}  // namespace

std::vector<double> secular_roots(const ModelParams& params, const ModeLadder& ladder) {
  params.validate();
  if (!(params.g > 0.0)) {
    throw ContractViolation("secular_roots requires g > 0");
  }
  const SecularFunction f(params, ladder);
  const std::size_t n = f.n_poles();
  const double upper = gershgorin_upper(params, ladder);

  std::vector<double> roots;
  roots.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    // Interval [left, right] in lambda; pole indices or -1 for a finite end.
    const long left_pole = i == 0 ? -1 : static_cast<long>(i - 1);
    const long right_pole = i == n ? -1 : static_cast<long>(i);
    const double left = left_pole < 0 ? 0.0 : f.pole(static_cast<std::size_t>(left_pole));
    const double right = right_pole < 0 ? upper : f.pole(static_cast<std::size_t>(right_pole));
    const double width = right - left;

    // Work relative to the nearer pole so the root keeps full precision.
    const bool in_right_half = f.value(left_pole, 0.5 * width) > 0.0;
    long origin = left_pole;
    double lo = 0.0;
    double hi = width;
    if (in_right_half) {
      lo = 0.5 * width;
      if (right_pole >= 0) {
        origin = right_pole;
        lo = -0.5 * width;
        hi = 0.0;
      }
    } else {
      hi = 0.5 * width;
    }
    if (i == n && f.value(origin, hi) > 0.0) {
      throw BracketingError("secular function positive at the Gershgorin bound", left, right);
    }
    const double delta = bisect(f, origin, lo, hi);
    const double origin_value = origin < 0 ? 0.0 : f.pole(static_cast<std::size_t>(origin));
    const double lambda = origin_value + delta;
    if (origin >= 0 && std::abs(delta) <= 1e-12 * origin_value) {
      throw BracketingError("secular root coincides with pole " + std::to_string(origin_value) +
                                " within tolerance",
                            left, right);
    }
    roots.push_back(std::sqrt(lambda));
  }
  return roots;
}

double secular_residual(const ModelParams& params, const ModeLadder& ladder, double omega) {
  const SecularFunction f(params, ladder);
  long origin = -1;
  double delta = omega * omega;
  for (std::size_t k = 0; k < ladder.frequencies.size(); ++k) {
    const double wk = ladder.frequencies[k];
    const double candidate = (omega - wk) * (omega + wk);
    if (std::abs(candidate) < std::abs(delta)) {
      origin = static_cast<long>(k);
      delta = candidate;
    }
  }
  double magnitude = 0.0;
  const double value = f.value(origin, delta, &magnitude);
  return std::abs(value) / magnitude;
}

std::vector<int> interlacing_counts(const Eigen::VectorXd& eigenvalues, const ModeLadder& ladder) {
  const std::size_t n = ladder.frequencies.size();
  std::vector<int> counts(n + 1, 0);
  for (Eigen::Index s = 0; s < eigenvalues.size(); ++s) {
    const double lambda = eigenvalues(s);
    for (std::size_t i = 0; i <= n; ++i) {
      const double lo = i == 0 ? 0.0 : ladder.frequencies[i - 1] * ladder.frequencies[i - 1];
      const double hi = i == n ? INFINITY : ladder.frequencies[i] * ladder.frequencies[i];
      if (lambda > lo && lambda < hi) {
        ++counts[i];
        break;
      }
    }
  }
  return counts;
}

}  // namespace dressed
