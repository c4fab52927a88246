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

#include "cvbell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kViolationTol = 1e-9;

double canonical_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("angle must be finite");
  }
  double a = std::fmod(theta, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

Mat2cd counter_rotation(double theta) {
  Mat2cd g;
  g << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return g;
}

/// Shared mutable cache so repeated evaluations with the same first-direction
/// angle (the grid/table pattern) reuse the rotated tensor.
struct FockKernelData {
  FockState base;
  bool has_rot = false;
  double rot_theta1 = 0.0;
  FockState rot1;

  explicit FockKernelData(FockState s) : base(std::move(s)), rot1(base) {}

  double eval(ModeMask modes, double theta1, double theta2) {
    const bool need1 = ((modes & 1u) != 0) != ((modes & 2u) != 0);
    const bool need2 = ((modes & 4u) != 0) != ((modes & 8u) != 0);
    const FockState* stage = &base;
    if (need1) {
      if (!has_rot || rot_theta1 != theta1) {
        rot1 = base;
        apply_two_mode(rot1, 1, 2, counter_rotation(theta1));
        rot_theta1 = theta1;
        has_rot = true;
      }
      stage = &rot1;
    }
    if (!need2) return vacuum_probability(*stage, modes);
    FockState work = *stage;
    apply_two_mode(work, 3, 4, counter_rotation(theta2));
    return vacuum_probability(work, modes);
  }
};

struct NelderMeadPoint {
  std::array<double, 4> x;
  double value;  // -f, minimized
};

}  // namespace

BellAngles::BellAngles(double t1, double t2, double t1p, double t2p)
    : theta1(canonical_angle(t1)),
      theta2(canonical_angle(t2)),
      theta1p(canonical_angle(t1p)),
      theta2p(canonical_angle(t2p)) {}

RateKernel gaussian_kernel(const GaussianState& s) {
  auto state = std::make_shared<GaussianState>(s);
  return [state](ModeMask modes, double theta1, double theta2) {
    return vacuum_overlap(*state, modes, theta1, theta2);
  };
}

RateKernel fock_kernel(const FockState& s) {
  auto data = std::make_shared<FockKernelData>(s);
  return [data](ModeMask modes, double theta1, double theta2) {
    return data->eval(modes, theta1, theta2);
  };
}

RateKernel fock_density_kernel(const FockDensity& s) {
  auto state = std::make_shared<FockDensity>(s);
  return [state](ModeMask modes, double theta1, double theta2) {
    return polarizer_vacuum_prob(*state, modes, theta1, theta2);
  };
}

RateKernel ecs_kernel(double alpha, int cutoff) {
  RateKernel joint = fock_kernel(ecs_pair({alpha}, cutoff));
  // The closed form is exact for the split-odd-coherent state when its
  // argument is sqrt(2)*Re(alpha); verified against the Fock expansion to
  // machine precision.
  const double d = std::sqrt(2.0) * alpha;
  return [d, joint](ModeMask modes, double theta1, double theta2) {
    if (modes == mode_mask({1})) return ecs_vacuum_prob_closed(d, theta1);
    if (modes == mode_mask({3})) return ecs_vacuum_prob_closed(d, theta2);
    return joint(modes, theta1, theta2);
  };
}

double coincidence(const RateKernel& kernel, const PolarizerSetting& setting) {
  const ModeMask mask_k =
      setting.theta_k ? mode_mask({1}) : mode_mask({1, 2});
  const ModeMask mask_kp =
      setting.theta_kp ? mode_mask({3}) : mode_mask({3, 4});
  const double t1 = setting.theta_k.value_or(0.0);
  const double t2 = setting.theta_kp.value_or(0.0);
  return 1.0 - kernel(mask_k, t1, t2) - kernel(mask_kp, t1, t2) +
         kernel(mask_k | mask_kp, t1, t2);
}

BellReport bell_functional(const RateKernel& kernel, const BellAngles& a) {
  BellReport r;
  r.p_t1t2 = coincidence(kernel, {a.theta1, a.theta2});
  r.p_t1t2p = coincidence(kernel, {a.theta1, a.theta2p});
  r.p_t1pt2 = coincidence(kernel, {a.theta1p, a.theta2});
  r.p_t1pt2p = coincidence(kernel, {a.theta1p, a.theta2p});
  r.p_t1p_x = coincidence(kernel, {a.theta1p, std::nullopt});
  r.p_x_t2 = coincidence(kernel, {std::nullopt, a.theta2});
  r.p_xx = coincidence(kernel, {std::nullopt, std::nullopt});
  r.f = r.p_t1t2 - r.p_t1t2p + r.p_t1pt2 + r.p_t1pt2p - r.p_t1p_x - r.p_x_t2;
  r.lower_margin = r.f + r.p_xx;
  r.upper_margin = -r.f;
  r.violated = r.f > kViolationTol || r.f < -r.p_xx - kViolationTol;
  return r;
}

double ecs_vacuum_prob_closed(double d, double theta) {
  if (!std::isfinite(d) || !std::isfinite(theta)) {
    throw std::invalid_argument("arguments must be finite");
  }
  const double x = d * d;
  if (x < 1e-6) {
    return (9.0 - std::cos(4.0 * theta)) / 16.0;
  }
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  const double em = std::expm1(x);
  const double pref = 2.0 * std::exp(x) / (em * em);
  if (x < 0.1) {
    // Series of the bracket in powers of x; the direct form cancels badly
    // for small x.
    double bracket = 0.0;
    double fact2 = 1.0;  // (2k)!
    std::array<double, 13> c_pow{}, s_pow{}, t_pow{}, inv_fact2{};
    c_pow[0] = s_pow[0] = t_pow[0] = 1.0;
    inv_fact2[0] = 1.0;
    for (int k = 1; k <= 12; ++k) {
      c_pow[k] = c_pow[k - 1] * (c / 4.0) * (c / 4.0);
      s_pow[k] = s_pow[k - 1] * (s / 4.0) * (s / 4.0);
      t_pow[k] = t_pow[k - 1] * 0.75 * 0.75;
      fact2 *= (2.0 * k - 1.0) * (2.0 * k);
      inv_fact2[k] = 1.0 / fact2;
    }
    double xpow = 1.0;
    for (int n = 1; n <= 12; ++n) {
      xpow *= x * x;
      double beta = -c_pow[n] * inv_fact2[n];
      for (int i = 0; i <= n; ++i) {
        beta += t_pow[i] * inv_fact2[i] * s_pow[n - i] * inv_fact2[n - i];
      }
      bracket += beta * xpow;
    }
    return pref * bracket;
  }
  const double bracket = -std::cosh(0.25 * x * c) +
                         std::cosh(0.75 * x) * std::cosh(0.25 * x * s);
  return pref * bracket;
}

OptimizeResult optimize_angles(const RateKernel& kernel,
                               int seed_grid_density) {
  if (seed_grid_density < 4) {
    throw std::invalid_argument("grid density must be at least 4");
  }
  const int d = seed_grid_density;
  std::vector<double> grid(d);
  for (int k = 0; k < d; ++k) grid[k] = kTwoPi * k / d;

  const ModeMask m1 = mode_mask({1});
  const ModeMask m3 = mode_mask({3});
  const ModeMask m134 = mode_mask({1, 3, 4});
  const ModeMask m123 = mode_mask({1, 2, 3});
  const double a1x = kernel(mode_mask({1, 2}), 0.0, 0.0);
  const double a2x = kernel(mode_mask({3, 4}), 0.0, 0.0);

  std::vector<double> ta(d), tb(d), tc(d), td(d);
  std::vector<std::vector<double>> tj(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i) {
    ta[i] = kernel(m1, grid[i], 0.0);
    tc[i] = kernel(m134, grid[i], 0.0);
    for (int j = 0; j < d; ++j) {
      tj[i][j] = kernel(mode_mask({1, 3}), grid[i], grid[j]);
    }
  }
  for (int j = 0; j < d; ++j) {
    tb[j] = kernel(m3, 0.0, grid[j]);
    td[j] = kernel(m123, 0.0, grid[j]);
  }

  double best_f = -std::numeric_limits<double>::infinity();
  int bi1 = 0, bj1 = 0, bi2 = 0, bj2 = 0;
  for (int i1 = 0; i1 < d; ++i1) {
    for (int j1 = 0; j1 < d; ++j1) {
      const double p11 = 1.0 - ta[i1] - tb[j1] + tj[i1][j1];
      const double pxt2 = 1.0 - a1x - tb[j1] + td[j1];
      for (int i2 = 0; i2 < d; ++i2) {
        const double p21 = 1.0 - ta[i2] - tb[j1] + tj[i2][j1];
        const double pt1px = 1.0 - ta[i2] - a2x + tc[i2];
        for (int j2 = 0; j2 < d; ++j2) {
          const double p12 = 1.0 - ta[i1] - tb[j2] + tj[i1][j2];
          const double p22 = 1.0 - ta[i2] - tb[j2] + tj[i2][j2];
          const double f = p11 - p12 + p21 + p22 - pt1px - pxt2;
          if (f > best_f) {
            best_f = f;
            bi1 = i1;
            bj1 = j1;
            bi2 = i2;
            bj2 = j2;
          }
        }
      }
    }
  }

  auto objective = [&kernel](const std::array<double, 4>& x) {
    return -bell_functional(kernel, BellAngles(x[0], x[1], x[2], x[3])).f;
  };

  // Nelder-Mead refinement from the best grid point.
  const double step = kTwoPi / d / 4.0;
  std::array<double, 4> start = {grid[bi1], grid[bj1], grid[bi2], grid[bj2]};
  std::vector<NelderMeadPoint> simplex;
  simplex.push_back({start, objective(start)});
  for (int k = 0; k < 4; ++k) {
    std::array<double, 4> x = start;
    x[k] += step;
    simplex.push_back({x, objective(x)});
  }
  constexpr int kMaxIters = 500;
  constexpr double kDiameterTol = 1e-6;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const NelderMeadPoint& a, const NelderMeadPoint& b) {
                return a.value < b.value;
              });
    double diameter = 0.0;
    for (int k = 1; k < 5; ++k) {
      double dist = 0.0;
      for (int c = 0; c < 4; ++c) {
        const double dd = simplex[k].x[c] - simplex[0].x[c];
        dist += dd * dd;
      }
      diameter = std::max(diameter, std::sqrt(dist));
    }
    if (diameter < kDiameterTol) break;

    std::array<double, 4> centroid = {0, 0, 0, 0};
    for (int k = 0; k < 4; ++k) {
      for (int c = 0; c < 4; ++c) centroid[c] += simplex[k].x[c] / 4.0;
    }
    auto affine = [&](double coeff) {
      std::array<double, 4> x;
      for (int c = 0; c < 4; ++c) {
        x[c] = centroid[c] + coeff * (simplex[4].x[c] - centroid[c]);
      }
      return x;
    };
    const auto xr = affine(-1.0);
    const double fr = objective(xr);
    if (fr < simplex[0].value) {
      const auto xe = affine(-2.0);
      const double fe = objective(xe);
      simplex[4] = fe < fr ? NelderMeadPoint{xe, fe} : NelderMeadPoint{xr, fr};
    } else if (fr < simplex[3].value) {
      simplex[4] = {xr, fr};
    } else {
      const auto xc = affine(0.5);
      const double fc = objective(xc);
      if (fc < simplex[4].value) {
        simplex[4] = {xc, fc};
      } else {
        for (int k = 1; k < 5; ++k) {
          for (int c = 0; c < 4; ++c) {
            simplex[k].x[c] =
                simplex[0].x[c] + 0.5 * (simplex[k].x[c] - simplex[0].x[c]);
          }
          simplex[k].value = objective(simplex[k].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const NelderMeadPoint& a, const NelderMeadPoint& b) {
              return a.value < b.value;
            });

  const auto& bx = simplex[0].x;
  BellAngles refined(bx[0], bx[1], bx[2], bx[3]);
  BellAngles coarse(start[0], start[1], start[2], start[3]);
  const BellReport refined_report = bell_functional(kernel, refined);
  if (refined_report.f >= best_f) {
    return {refined, refined_report};
  }
  return {coarse, bell_functional(kernel, coarse)};
}

}  // namespace cvbell
