// Copyright 2026 The cvbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvbell/gaussian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kUncertaintyTol = 1e-10;
constexpr double kConditionLimit = 1e12;
constexpr double kProbSlack = 1e-9;

double condition_number(const Mat8& m) {
  Eigen::JacobiSVD<Mat8> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

ModeMask mode_mask(std::initializer_list<int> modes) {
  ModeMask mask = 0;
  for (int m : modes) {
    if (m < 1 || m > kNumModes) {
      throw std::invalid_argument("mode index must be in 1..4");
    }
    mask |= 1u << (m - 1);
  }
  return mask;
}

GaussianState::GaussianState(const Mat8& v) : v_(v) {
  if (!v.allFinite()) {
    throw std::invalid_argument("covariance entries must be finite");
  }
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > kSymTol) {
    throw std::invalid_argument("covariance matrix must be symmetric");
  }
  // Uncertainty principle: V + (i/2) beta >= 0 implies V > 0.
  Eigen::Matrix<std::complex<double>, 8, 8> h =
      v.cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) *
          symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, 8, 8>> es(
      h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kUncertaintyTol) {
    throw std::invalid_argument(
        "covariance matrix violates the uncertainty principle");
  }
  Eigen::SelfAdjointEigenSolver<Mat8> ev(v, Eigen::EigenvaluesOnly);
  if (ev.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("covariance matrix must be positive definite");
  }
}

GaussianState GaussianState::vacuum() {
  return GaussianState(0.5 * Mat8::Identity());
}

GaussianState thermal_state(const ThermalParam& t) {
  if (!(t.kappa > 0.0) || t.kappa > 1.0) {
    throw std::invalid_argument("kappa must lie in (0, 1]");
  }
  return GaussianState(Mat8::Identity() / (2.0 * t.kappa));
}

GaussianState apply_symplectic(const GaussianState& s,
                               const SymplecticMap& m) {
  Mat8 v = m.matrix() * s.covariance() * m.matrix().transpose();
  // Re-symmetrize to keep roundoff from accumulating across compositions.
  return GaussianState(0.5 * (v + v.transpose()));
}

GaussianState attenuate(const GaussianState& s, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  return GaussianState(t * s.covariance() +
                       0.5 * (1.0 - t) * Mat8::Identity());
}

GMatrix g_matrix(const GaussianState& s) {
  const double cond = condition_number(s.covariance());
  if (cond > kConditionLimit) {
    throw IllConditionedError(
        "covariance matrix is numerically singular (condition number " +
            std::to_string(cond) + ")",
        cond);
  }
  Mat8 g = 0.5 * s.covariance().inverse();
  return GMatrix(0.5 * (g + g.transpose()));
}

double vacuum_overlap(const GaussianState& s, ModeMask modes, double theta1,
                      double theta2) {
  if (modes == 0 || modes > kAllModes) {
    throw std::invalid_argument("mode subset must be a nonempty subset of 1..4");
  }
  const Mat8 g = g_matrix(s).matrix();
  const Mat8 u = polarizer_rotation(theta1, theta2).matrix();
  Mat8 a = u.transpose() * g * u;
  int nmodes = 0;
  for (int i = 0; i < kNumModes; ++i) {
    if (modes & (1u << i)) {
      a(i, i) += 1.0;
      a(i + 4, i + 4) += 1.0;
      ++nmodes;
    }
  }
  const double cond = condition_number(a);
  if (cond > kConditionLimit) {
    throw IllConditionedError(
        "projected quadratic form is numerically singular (condition number " +
            std::to_string(cond) + ")",
        cond);
  }
  // Both G and A are symmetric positive definite; LDLT gives the
  // determinants without sign trouble.
  const double det_g = g.ldlt().vectorD().prod();
  const double det_a = a.ldlt().vectorD().prod();
  const double p = std::ldexp(1.0, nmodes) * std::sqrt(det_g / det_a);
  if (!(p >= -kProbSlack && p <= 1.0 + kProbSlack)) {
    throw NumericalError("vacuum overlap " + std::to_string(p) +
                         " is outside [0, 1]");
  }
  return std::min(std::max(p, 0.0), 1.0);
}

GaussianState four_mode_squeezed(double u, double v, double kappa) {
  const SymplecticMap s =
      embed_passive(max_entangling_unitary()) * squeezer_block({u, v});
  return apply_symplectic(thermal_state({kappa}), s);
}

}  // namespace cvbell
