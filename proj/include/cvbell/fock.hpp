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

#ifndef CVBELL_FOCK_HPP
#define CVBELL_FOCK_HPP

#include <array>
#include <complex>
#include <vector>

#include "cvbell/gaussian.hpp"
#include "cvbell/symplectic.hpp"

namespace cvbell {

using Complex = std::complex<double>;

/// Probability mass an operation may silently push above the cutoff before
/// it fails with TruncationError. Truncation is never silent beyond this.
inline constexpr double kTruncationBudget = 1e-10;

/// Pure state of the four-mode field as a dense amplitude tensor over the
/// truncated product Fock basis |n1 n2 n3 n4>.
class FockState {
 public:
  explicit FockState(const std::array<int, 4>& cutoffs);

  static FockState basis(const std::array<int, 4>& photons,
                         const std::array<int, 4>& cutoffs);

  const std::array<int, 4>& cutoffs() const { return cutoffs_; }
  int dim(int mode0) const { return cutoffs_[mode0] + 1; }
  std::size_t size() const { return amp_.size(); }

  Complex& at(int n1, int n2, int n3, int n4) {
    return amp_[index(n1, n2, n3, n4)];
  }
  Complex at(int n1, int n2, int n3, int n4) const {
    return amp_[index(n1, n2, n3, n4)];
  }
  std::vector<Complex>& amplitudes() { return amp_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }

  std::size_t index(int n1, int n2, int n3, int n4) const;
  std::size_t stride(int mode0) const { return strides_[mode0]; }

  double norm_squared() const;
  void renormalize();

  /// Probability mass discarded above the cutoffs so far.
  double tail() const { return tail_; }
  void add_tail(double t) { tail_ += t; }

 private:
  std::array<int, 4> cutoffs_;
  std::array<std::size_t, 4> strides_;
  std::vector<Complex> amp_;
  double tail_ = 0.0;
};

/// Mixed state as an ensemble of unnormalized pure branches (Kraus images);
/// branch weights are the squared norms.
class FockDensity {
 public:
  explicit FockDensity(std::vector<FockState> branches)
      : branches_(std::move(branches)) {}
  explicit FockDensity(const FockState& pure) : branches_{pure} {}

  const std::vector<FockState>& branches() const { return branches_; }
  double trace() const;

 private:
  std::vector<FockState> branches_;
};

struct PcsParams {
  Complex zeta;
  int q = 0;
};

struct EcsParams {
  Complex alpha;
};

FockState basis_state(const std::array<int, 4>& photons,
                      const std::array<int, 4>& cutoffs);

/// Metaplectic action of a 4x4 passive unitary, factored into exact
/// two-mode blocks; conserves total photon number.
FockState apply_passive(const FockState& s, const PassiveUnitary& u);

/// Exact two-mode block action of a 2x2 unitary on modes i, j (1-based).
/// Mass pushed outside the cutoff window is recorded in the state's tail.
void apply_two_mode(FockState& s, int i, int j, const Mat2cd& g);

/// Truncated exp[u (a^2 - a^dag^2) / 2] along `mode` (1-based).
FockState apply_squeeze(const FockState& s, int mode, double u,
                        double budget = kTruncationBudget);

/// |PCS>_13 |PCS>_24 with per-pair expansion A_q sum_n zeta^n /
/// sqrt(n! (n+q)!) |n+q, n>; normalized by direct series summation.
FockState pcs_pair(const PcsParams& p, int cutoff,
                   double budget = kTruncationBudget);

/// |ECS>_13 |ECS>_24: vacuum on modes 1,2 and odd coherent states on modes
/// 3,4, mixed by the balanced pair transform D.
FockState ecs_pair(const EcsParams& p, int cutoff,
                   double budget = kTruncationBudget);

/// Per-mode beam-splitter loss against vacuum ancillas at transmittance t,
/// ancillas traced out; small-scale oracle for the Gaussian channel.
FockDensity attenuate_fock(const FockState& s, double t,
                           std::size_t max_branches = 100000);

/// Probability that all modes in `modes` are vacuum after the polarizer
/// rotation U(theta1, theta2); matches the Gaussian backend's
/// vacuum_overlap convention.
double polarizer_vacuum_prob(const FockState& s, ModeMask modes, double theta1,
                             double theta2);
double polarizer_vacuum_prob(const FockDensity& s, ModeMask modes,
                             double theta1, double theta2);

/// Probability that all modes in `modes` are vacuum, without any rotation.
double vacuum_probability(const FockState& s, ModeMask modes);

/// Symmetrized quadrature covariance matrix (zero-mean states).
Mat8 covariance_from_fock(const FockState& s);
Mat8 covariance_from_fock(const FockDensity& s);

/// |<a|b>|^2 (states must share cutoffs).
double fidelity(const FockState& a, const FockState& b);

}  // namespace cvbell

#endif  // CVBELL_FOCK_HPP
