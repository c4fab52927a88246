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

#ifndef CVBELL_GAUSSIAN_HPP
#define CVBELL_GAUSSIAN_HPP

#include "cvbell/symplectic.hpp"

namespace cvbell {

/// Mode subsets are bitmasks: bit (mode-1) set means the mode is selected.
using ModeMask = unsigned;

inline constexpr ModeMask kAllModes = 0xF;

/// Builds a ModeMask from 1-based mode indices.
ModeMask mode_mask(std::initializer_list<int> modes);

/// kappa = tanh(hbar*omega / 2kT); kappa = 1 is the vacuum.
struct ThermalParam {
  double kappa = 1.0;
};

/// Zero-mean Gaussian state of the four-mode field, held as its 8x8
/// covariance matrix in (q1..q4, p1..p4) ordering with hbar = 1
/// (vacuum covariance I/2).
class GaussianState {
 public:
  explicit GaussianState(const Mat8& v);

  static GaussianState vacuum();

  const Mat8& covariance() const { return v_; }

 private:
  Mat8 v_;
};

/// G = V^-1 / 2, the quadratic form of the Gaussian Wigner function.
class GMatrix {
 public:
  explicit GMatrix(const Mat8& g) : g_(g) {}
  const Mat8& matrix() const { return g_; }

 private:
  Mat8 g_;
};

/// V = I / (2 kappa).
GaussianState thermal_state(const ThermalParam& t);

/// V -> M V M^T.
GaussianState apply_symplectic(const GaussianState& s, const SymplecticMap& m);

/// Per-mode beam-splitter loss at transmittance t with the vacuum ancilla
/// traced out: V -> t V + (1-t)/2 I.
GaussianState attenuate(const GaussianState& s, double t);

GMatrix g_matrix(const GaussianState& s);

/// Probability that every mode in `modes`, after the polarizer rotation
/// U(theta1, theta2), is found in its vacuum:
///   2^|modes| sqrt(det G / det(U^T G U + sum_i (e_ii + e_{i+4,i+4}))).
double vacuum_overlap(const GaussianState& s, ModeMask modes, double theta1,
                      double theta2);

/// Covariance of K S(u,v) acting on a thermal state: the generic four-mode
/// (squeezed thermal) Gaussian of the study. kappa = 1 gives the pure
/// squeezed vacuum; v = -u gives |TMSV>_13 |TMSV>_24.
GaussianState four_mode_squeezed(double u, double v, double kappa = 1.0);

}  // namespace cvbell

#endif  // CVBELL_GAUSSIAN_HPP
