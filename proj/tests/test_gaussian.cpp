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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cvbell/errors.hpp"
#include "cvbell/gaussian.hpp"

using namespace cvbell;

TEST_CASE("thermal state covariance and validation") {
  CHECK((thermal_state({1.0}).covariance() - 0.5 * Mat8::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK(thermal_state({0.8}).covariance()(0, 0) == doctest::Approx(0.625));
  CHECK_THROWS_AS(thermal_state({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(thermal_state({1.5}), std::invalid_argument);
}

TEST_CASE("covariance validation rejects sub-uncertainty matrices") {
  CHECK_THROWS_AS((void)GaussianState(0.25 * Mat8::Identity()),
                  std::invalid_argument);
  Mat8 asym = 0.5 * Mat8::Identity();
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS((void)GaussianState(asym), std::invalid_argument);
}

TEST_CASE("apply_symplectic and passive invariance of thermal states") {
  const GaussianState th = thermal_state({0.7});
  const SymplecticMap k = embed_passive(max_entangling_unitary());
  const GaussianState rotated = apply_symplectic(th, k);
  CHECK((rotated.covariance() - th.covariance()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("squeezed vacuum covariance matches the TMSV pair structure") {
  const double u = 0.4;
  const GaussianState s = four_mode_squeezed(u, -u, 1.0);
  const Mat8& v = s.covariance();
  const double ch = std::cosh(2 * u) / 2, sh = std::sinh(2 * u) / 2;
  // |TMSV>_13 |TMSV>_24: local thermal diagonals, q-q correlations between
  // paired modes, opposite sign in p.
  for (int i = 0; i < 8; ++i) CHECK(v(i, i) == doctest::Approx(ch));
  CHECK(std::abs(std::abs(v(0, 2)) - sh) < 1e-12);
  CHECK(std::abs(std::abs(v(1, 3)) - sh) < 1e-12);
  CHECK(v(4, 6) == doctest::Approx(-v(0, 2)));
  CHECK(v(5, 7) == doctest::Approx(-v(1, 3)));
  CHECK(std::abs(v(0, 1)) < 1e-12);
  CHECK(std::abs(v(0, 3)) < 1e-12);
  CHECK(std::abs(v(0, 4)) < 1e-12);
}

TEST_CASE("four_mode_squeezed at zero squeezing is the thermal state") {
  const Mat8 diff = four_mode_squeezed(0.0, 0.0, 0.9).covariance() -
                    thermal_state({0.9}).covariance();
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("g_matrix two independent routes agree") {
  const double u = 0.5, v = -0.3, kappa = 0.8;
  const GaussianState s = four_mode_squeezed(u, v, kappa);
  const Mat8 g = g_matrix(s).matrix();
  // Composed route: K S^-1 G0 S^-1 K^-1 with G0 = kappa I.
  const Mat8 k = embed_passive(max_entangling_unitary()).matrix();
  const Mat8 sinv = squeezer_block({u, v}).inverse().matrix();
  const Mat8 composed = k * sinv * (kappa * Mat8::Identity()) * sinv *
                        k.transpose();
  CHECK((g - composed).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g_matrix(GaussianState::vacuum()).matrix() - Mat8::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(g_matrix(thermal_state({0.6})).matrix()(3, 3) ==
        doctest::Approx(0.6));
}

TEST_CASE("vacuum overlap closed values for thermal states") {
  CHECK(vacuum_overlap(GaussianState::vacuum(), mode_mask({1}), 1.3, 0.2) ==
        doctest::Approx(1.0));
  for (double kappa : {0.5, 0.8, 1.0}) {
    const GaussianState th = thermal_state({kappa});
    const double single = 2 * kappa / (kappa + 1);
    CHECK(vacuum_overlap(th, mode_mask({1}), 0.0, 0.0) ==
          doctest::Approx(single).epsilon(1e-12));
    CHECK(vacuum_overlap(th, mode_mask({1, 3}), 0.0, 0.0) ==
          doctest::Approx(single * single).epsilon(1e-12));
  }
  CHECK(vacuum_overlap(thermal_state({0.5}), mode_mask({1}), 0.0, 0.0) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("vacuum overlap angle invariances") {
  const GaussianState s = four_mode_squeezed(0.35, -0.35, 0.9);
  const double base = vacuum_overlap(s, mode_mask({1}), 0.77, 0.0);
  CHECK(vacuum_overlap(s, mode_mask({1}), 0.77 + 2 * M_PI, 0.0) ==
        doctest::Approx(base).epsilon(1e-12));
  // Direction-k mask must not depend on the other direction's polarizer.
  CHECK(vacuum_overlap(s, mode_mask({1}), 0.77, 2.1) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("thermal overlap decreases with temperature") {
  double prev = 2.0;
  for (double kappa : {1.0, 0.8, 0.6, 0.4}) {
    const double o = vacuum_overlap(thermal_state({kappa}), kAllModes, 0, 0);
    CHECK(o < prev);
    prev = o;
  }
}

TEST_CASE("attenuate closed form against the explicit ancilla circuit") {
  // Single squeezed mode: diag(e^-2u, e^2u)/2 must go to
  // diag(t e^-2u + 1 - t, t e^2u + 1 - t)/2. Build the ancilla circuit with
  // mode 2 as the vacuum ancilla and read back the mode-1 block.
  const double u = 0.45;
  Mat8 v0 = 0.5 * Mat8::Identity();
  v0(0, 0) = 0.5 * std::exp(-2 * u);
  v0(4, 4) = 0.5 * std::exp(2 * u);
  const GaussianState s(v0);
  for (double t : {1.0, 0.8, 0.3, 0.0}) {
    const double theta = std::acos(std::sqrt(t));
    const GaussianState mixed =
        apply_symplectic(s, beam_splitter(1, 2, theta));
    const Mat8& vm = mixed.covariance();
    const GaussianState closed = attenuate(s, t);
    // Partial trace over the ancilla keeps the (q1, p1) sub-block.
    CHECK(closed.covariance()(0, 0) == doctest::Approx(vm(0, 0)));
    CHECK(closed.covariance()(4, 4) == doctest::Approx(vm(4, 4)));
    CHECK(closed.covariance()(0, 4) == doctest::Approx(vm(0, 4)));
    CHECK(closed.covariance()(0, 0) ==
          doctest::Approx((t * std::exp(-2 * u) + 1 - t) / 2));
    CHECK(closed.covariance()(4, 4) ==
          doctest::Approx((t * std::exp(2 * u) + 1 - t) / 2));
  }
  const GaussianState vac = GaussianState::vacuum();
  CHECK((attenuate(vac, 0.37).covariance() - vac.covariance())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK_THROWS_AS(attenuate(vac, 1.2), std::invalid_argument);
}

TEST_CASE("attenuation channel composes multiplicatively") {
  const GaussianState s = four_mode_squeezed(0.6, -0.2, 0.85);
  const Mat8 twice = attenuate(attenuate(s, 0.7), 0.5).covariance();
  const Mat8 once = attenuate(s, 0.35).covariance();
  CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("uncertainty invariant survives random symplectic evolution") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> sq(-0.8, 0.8);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  GaussianState s = thermal_state({0.9});
  for (int i = 0; i < 50; ++i) {
    const SymplecticMap m = squeezer_block({sq(rng), sq(rng)}) *
                            beam_splitter(1 + i % 3, 4, angle(rng));
    s = apply_symplectic(s, m);  // constructor revalidates
    s = attenuate(s, 0.98);
  }
  CHECK(s.covariance().allFinite());
}

TEST_CASE("ill-conditioned overlap raises instead of returning garbage") {
  Mat8 v = 0.5 * Mat8::Identity();
  v(0, 0) = 1e13;  // condition number beyond the 1e12 limit
  const GaussianState s(v);
  CHECK_THROWS_AS(vacuum_overlap(s, mode_mask({1}), 0.0, 0.0),
                  IllConditionedError);
}
