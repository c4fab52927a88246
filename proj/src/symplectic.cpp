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

#include "cvbell/symplectic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr double kConstructTol = 1e-10;
constexpr double kSqueezeBound = 5.0;

void check_mode(int mode) {
  if (mode < 1 || mode > kNumModes) {
    throw std::invalid_argument("mode index must be in 1..4");
  }
}

void check_mode_pair(int i, int j) {
  check_mode(i);
  check_mode(j);
  if (i == j) {
    throw std::invalid_argument("mode indices must be distinct");
  }
}

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

Mat2cd wave_plate(double phi, double eta) {
  Eigen::Matrix2d nu;
  nu << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  Mat2cd c = Mat2cd::Zero();
  c(0, 0) = std::polar(1.0, eta / 2.0);
  c(1, 1) = std::polar(1.0, -eta / 2.0);
  return nu.cast<std::complex<double>>() * c *
         nu.transpose().cast<std::complex<double>>();
}

PassiveUnitary embed_two_mode(int i, int j, const Mat2cd& g) {
  Mat4cd u = Mat4cd::Identity();
  u(i - 1, i - 1) = g(0, 0);
  u(i - 1, j - 1) = g(0, 1);
  u(j - 1, i - 1) = g(1, 0);
  u(j - 1, j - 1) = g(1, 1);
  return PassiveUnitary(u);
}

}  // namespace

Mat8 symplectic_form() {
  Mat8 beta = Mat8::Zero();
  beta.topRightCorner<4, 4>() = Eigen::Matrix4d::Identity();
  beta.bottomLeftCorner<4, 4>() = -Eigen::Matrix4d::Identity();
  return beta;
}

SymplecticMap::SymplecticMap(const Mat8& m) : m_(m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("symplectic map entries must be finite");
  }
  const Mat8 beta = symplectic_form();
  const double err = (m * beta * m.transpose() - beta).cwiseAbs().maxCoeff();
  if (err > kConstructTol) {
    throw std::invalid_argument("matrix does not satisfy S beta S^T = beta");
  }
}

bool SymplecticMap::is_passive(double tol) const {
  if ((m_.transpose() * m_ - Mat8::Identity()).cwiseAbs().maxCoeff() > tol) {
    return false;
  }
  const auto x = m_.topLeftCorner<4, 4>();
  const auto y = m_.topRightCorner<4, 4>();
  return (m_.bottomRightCorner<4, 4>() - x).cwiseAbs().maxCoeff() <= tol &&
         (m_.bottomLeftCorner<4, 4>() + y).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMap SymplecticMap::inverse() const {
  // S^-1 = beta^T S^T beta for symplectic S; avoids a numerical inverse.
  const Mat8 beta = symplectic_form();
  return SymplecticMap(beta.transpose() * m_.transpose() * beta);
}

PassiveUnitary::PassiveUnitary(const Mat4cd& u) : u_(u) {
  if (!u.allFinite()) {
    throw std::invalid_argument("passive unitary entries must be finite");
  }
  const double err =
      (u * u.adjoint() - Mat4cd::Identity()).cwiseAbs().maxCoeff();
  if (err > kConstructTol) {
    throw std::invalid_argument("matrix is not unitary");
  }
}

PassiveUnitary PassiveUnitary::adjoint() const {
  return PassiveUnitary(u_.adjoint());
}

SymplecticMap squeezer_block(const SqueezeParams& p) {
  check_finite(p.u, "u");
  check_finite(p.v, "v");
  if (std::abs(p.u) > kSqueezeBound || std::abs(p.v) > kSqueezeBound) {
    throw std::invalid_argument("squeeze amount exceeds the sanity bound 5");
  }
  Mat8 m = Mat8::Zero();
  const double du[4] = {-p.u, -p.u, -p.v, -p.v};
  for (int k = 0; k < 4; ++k) {
    m(k, k) = std::exp(du[k]);
    m(k + 4, k + 4) = std::exp(-du[k]);
  }
  return SymplecticMap(m);
}

SymplecticMap phase_shift(int mode, double phi) {
  check_mode(mode);
  check_finite(phi, "phi");
  Mat8 m = Mat8::Identity();
  const int q = mode - 1;
  const int p = mode + 3;
  m(q, q) = std::cos(phi);
  m(q, p) = std::sin(phi);
  m(p, q) = -std::sin(phi);
  m(p, p) = std::cos(phi);
  return SymplecticMap(m);
}

SymplecticMap beam_splitter(int i, int j, double theta) {
  check_mode_pair(i, j);
  check_finite(theta, "theta");
  Mat2cd g;
  g << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return embed_passive(embed_two_mode(i, j, g));
}

PassiveUnitary quarter_wave(int i, int j, double phi) {
  check_mode_pair(i, j);
  check_finite(phi, "phi");
  return embed_two_mode(i, j, wave_plate(phi, M_PI / 2.0));
}

PassiveUnitary half_wave(int i, int j, double phi) {
  check_mode_pair(i, j);
  check_finite(phi, "phi");
  return embed_two_mode(i, j, wave_plate(phi, M_PI));
}

PassiveUnitary csd_compose(const Mat2cd& u1, const Mat2cd& u2,
                           const Mat2cd& v1, const Mat2cd& v2, double theta1,
                           double theta2) {
  check_finite(theta1, "theta1");
  check_finite(theta2, "theta2");
  for (const Mat2cd* blk : {&u1, &u2, &v1, &v2}) {
    if ((*blk * blk->adjoint() - Mat2cd::Identity()).cwiseAbs().maxCoeff() >
        kConstructTol) {
      throw std::invalid_argument("csd_compose block is not unitary");
    }
  }
  Mat4cd left = Mat4cd::Zero();
  left.topLeftCorner<2, 2>() = u1;
  left.bottomRightCorner<2, 2>() = u2;
  Mat4cd right = Mat4cd::Zero();
  right.topLeftCorner<2, 2>() = v1.transpose();
  right.bottomRightCorner<2, 2>() = v2.transpose();
  Mat4cd d = Mat4cd::Zero();
  const double c1 = std::cos(theta1), c2 = std::cos(theta2);
  const double s1 = std::sin(theta1), s2 = std::sin(theta2);
  d(0, 0) = c1;
  d(1, 1) = c2;
  d(0, 2) = s1;
  d(1, 3) = s2;
  d(2, 0) = -s1;
  d(3, 1) = -s2;
  d(2, 2) = c1;
  d(3, 3) = c2;
  return PassiveUnitary(left * d * right);
}

SymplecticMap embed_passive(const PassiveUnitary& u) {
  Mat8 m = Mat8::Zero();
  const Eigen::Matrix4d x = u.matrix().real();
  const Eigen::Matrix4d y = -u.matrix().imag();
  m.topLeftCorner<4, 4>() = x;
  m.topRightCorner<4, 4>() = y;
  m.bottomLeftCorner<4, 4>() = -y;
  m.bottomRightCorner<4, 4>() = x;
  return SymplecticMap(m);
}

PassiveUnitary polarizer_unitary(double theta1, double theta2) {
  check_finite(theta1, "theta1");
  check_finite(theta2, "theta2");
  Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  u(0, 0) = c1;
  u(0, 1) = -s1;
  u(1, 0) = s1;
  u(1, 1) = c1;
  u(2, 2) = c2;
  u(2, 3) = -s2;
  u(3, 2) = s2;
  u(3, 3) = c2;
  return PassiveUnitary(u.cast<std::complex<double>>());
}

SymplecticMap polarizer_rotation(double theta1, double theta2) {
  return embed_passive(polarizer_unitary(theta1, theta2));
}

PassiveUnitary max_entangling_unitary() {
  Eigen::Matrix4d u;
  u << 1, -1, -1, 1,  //
      1, 1, -1, -1,   //
      1, -1, 1, -1,   //
      1, 1, 1, 1;
  return PassiveUnitary((0.5 * u).cast<std::complex<double>>());
}

PassiveUnitary pair_mixing_unitary() {
  const Mat2cd id = Mat2cd::Identity();
  return csd_compose(id, id, id, id, -M_PI / 4.0, -M_PI / 4.0);
}

}  // namespace cvbell
