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

#ifndef CVBELL_SYMPLECTIC_HPP
#define CVBELL_SYMPLECTIC_HPP

#include <Eigen/Dense>

namespace cvbell {

inline constexpr int kNumModes = 4;

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat4cd = Eigen::Matrix4cd;
using Mat2cd = Eigen::Matrix2cd;

/// Quadrature ordering is (q1..q4, p1..p4) everywhere; beta is the
/// symplectic metric [[0, I4], [-I4, 0]] in that ordering.
Mat8 symplectic_form();

/// Real 8x8 linear map on the quadrature vector with S beta S^T = beta.
class SymplecticMap {
 public:
  explicit SymplecticMap(const Mat8& m);

  const Mat8& matrix() const { return m_; }

  /// True if the map is orthogonal with the [[X, Y], [-Y, X]] block form,
  /// i.e. photon-number conserving.
  bool is_passive(double tol = 1e-10) const;

  SymplecticMap inverse() const;

  friend SymplecticMap operator*(const SymplecticMap& a,
                                 const SymplecticMap& b) {
    return SymplecticMap(a.m_ * b.m_);
  }

 private:
  Mat8 m_;
};

/// Complex 4x4 unitary acting on the annihilation operators (a1..a4).
class PassiveUnitary {
 public:
  explicit PassiveUnitary(const Mat4cd& u);

  const Mat4cd& matrix() const { return u_; }

  PassiveUnitary adjoint() const;

  friend PassiveUnitary operator*(const PassiveUnitary& a,
                                  const PassiveUnitary& b) {
    return PassiveUnitary(a.u_ * b.u_);
  }

 private:
  Mat4cd u_;
};

/// Squeeze amounts for the mode pairs (1,2) and (3,4).
struct SqueezeParams {
  double u = 0.0;  // modes 1 and 2
  double v = 0.0;  // modes 3 and 4
};

/// diag(e^-u, e^-u, e^-v, e^-v, e^u, e^u, e^v, e^v).
SymplecticMap squeezer_block(const SqueezeParams& p);

/// Phase rotation [[cos, sin], [-sin, cos]] on (q_mode, p_mode). Modes 1..4.
SymplecticMap phase_shift(int mode, double phi);

/// Beam splitter mixing modes i and j: [[cos, -sin], [sin, cos]] applied
/// identically to the q and p pairs.
SymplecticMap beam_splitter(int i, int j, double theta);

/// Quarter-wave plate nu(phi) C(pi/2) nu(phi)^-1 on modes (i, j).
PassiveUnitary quarter_wave(int i, int j, double phi);

/// Half-wave plate nu(phi) C(pi) nu(phi)^-1 on modes (i, j).
PassiveUnitary half_wave(int i, int j, double phi);

/// blockdiag(U1, U2) * [[C, S], [-S, C]] * blockdiag(V1^T, V2^T) with
/// C = diag(cos t1, cos t2), S = diag(sin t1, sin t2).
PassiveUnitary csd_compose(const Mat2cd& u1, const Mat2cd& u2,
                           const Mat2cd& v1, const Mat2cd& v2, double theta1,
                           double theta2);

/// [[X, Y], [-Y, X]] with X = Re(u), Y = -Im(u).
SymplecticMap embed_passive(const PassiveUnitary& u);

/// R(theta1) on modes (1,2), R(theta2) on modes (3,4), as a 4x4 real unitary
/// on the annihilation operators.
PassiveUnitary polarizer_unitary(double theta1, double theta2);

/// R(theta1) (+) R(theta2) (+) R(theta1) (+) R(theta2) on the quadratures.
SymplecticMap polarizer_rotation(double theta1, double theta2);

/// The maximally entangling U(4) element, 1/2 {{1,-1,-1,1},{1,1,-1,-1},
/// {1,-1,1,-1},{1,1,1,1}}; its quadrature embedding is the matrix K.
PassiveUnitary max_entangling_unitary();

/// The balanced pair mixer D with C = -S = I/sqrt(2); its quadrature
/// embedding is the matrix E that splits (3,4) into (1,3)(2,4) pairs.
PassiveUnitary pair_mixing_unitary();

}  // namespace cvbell

#endif  // CVBELL_SYMPLECTIC_HPP
