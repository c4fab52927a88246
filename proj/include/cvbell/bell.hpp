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

#ifndef CVBELL_BELL_HPP
#define CVBELL_BELL_HPP

#include <functional>
#include <optional>

#include "cvbell/fock.hpp"
#include "cvbell/gaussian.hpp"

namespace cvbell {

/// Polarizer angles (theta1, theta2, theta1', theta2'), canonicalized into
/// [0, 2pi).
struct BellAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta1p = 0.0;
  double theta2p = 0.0;

  BellAngles() = default;
  BellAngles(double t1, double t2, double t1p, double t2p);
};

/// One polarizer setting per propagation direction; nullopt means the
/// polarizer is removed.
struct PolarizerSetting {
  std::optional<double> theta_k;
  std::optional<double> theta_kp;
};

/// The six coincidence rates of the Bell functional, the functional value,
/// and the margins against both bounds of the inequality.
struct BellReport {
  double p_t1t2 = 0.0;
  double p_t1t2p = 0.0;
  double p_t1pt2 = 0.0;
  double p_t1pt2p = 0.0;
  double p_t1p_x = 0.0;  // P(theta1', )
  double p_x_t2 = 0.0;   // P( , theta2)
  double p_xx = 0.0;     // P( , )
  double f = 0.0;
  double lower_margin = 0.0;  // f + P( , ); negative means lower bound broken
  double upper_margin = 0.0;  // -f; negative means upper bound broken
  bool violated = false;
};

/// Backend abstraction: probability that all modes in the mask are vacuum
/// after the polarizer rotation U(theta1, theta2).
using RateKernel = std::function<double(ModeMask, double, double)>;

RateKernel gaussian_kernel(const GaussianState& s);
RateKernel fock_kernel(const FockState& s);
RateKernel fock_density_kernel(const FockDensity& s);

/// Hybrid kernel for the entangled coherent state |ECS>_13 |ECS>_24 with
/// real alpha: closed-form single-polarizer terms, Fock joint terms.
RateKernel ecs_kernel(double alpha, int cutoff);

/// Coincidence rate for one polarizer setting via inclusion-exclusion over
/// vacuum projectors.
double coincidence(const RateKernel& kernel, const PolarizerSetting& setting);

BellReport bell_functional(const RateKernel& kernel, const BellAngles& a);

/// Closed-form Tr(rho |0>_theta <0|) for |ECS>_13 |ECS>_24 with
/// d = sqrt(2) * Re(alpha) of the split odd coherent state (the scaling that
/// makes the formula exact against the Fock expansion); switches to the
/// Taylor limit (9 - cos 4theta)/16 near d = 0.
double ecs_vacuum_prob_closed(double d, double theta);

struct OptimizeResult {
  BellAngles angles;
  BellReport report;
};

/// Deterministic coarse grid search over [0, 2pi)^4 followed by Nelder-Mead
/// refinement; maximizes f.
OptimizeResult optimize_angles(const RateKernel& kernel,
                               int seed_grid_density = 12);

}  // namespace cvbell

#endif  // CVBELL_BELL_HPP
