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
#include "cvbell/fock.hpp"

using namespace cvbell;

namespace {

const std::array<int, 4> kSmall = {4, 4, 4, 4};

Mat2cd balanced() {
  Mat2cd u;
  u << 1, -1, 1, 1;
  return u / std::sqrt(2.0);
}

FockState psi1_reference(const std::array<int, 4>& cuts) {
  FockState s(cuts);
  s.at(1, 0, 1, 0) = 0.5;
  s.at(1, 0, 0, 1) = -0.5;
  s.at(0, 1, 1, 0) = -0.5;
  s.at(0, 1, 0, 1) = 0.5;
  return s;
}

FockState psi2_reference(const std::array<int, 4>& cuts) {
  FockState s(cuts);
  s.at(1, 1, 0, 0) = 0.5;
  s.at(1, 0, 0, 1) = -0.5;
  s.at(0, 1, 1, 0) = -0.5;
  s.at(0, 0, 1, 1) = 0.5;
  return s;
}

}  // namespace

TEST_CASE("basis state construction") {
  const FockState s = basis_state({0, 1, 0, 1}, kSmall);
  CHECK(s.norm_squared() == doctest::Approx(1.0));
  CHECK(std::abs(s.at(0, 1, 0, 1) - Complex(1, 0)) < 1e-15);
  CHECK_THROWS_AS(basis_state({5, 0, 0, 0}, kSmall), std::invalid_argument);
}

TEST_CASE("memory guard limits tensor size") {
  CHECK_THROWS_AS(FockState({100, 100, 100, 100}), ResourceLimitError);
}

TEST_CASE("balanced splitter on |01> gives the antisymmetric pair") {
  FockState s = basis_state({0, 1, 0, 0}, kSmall);
  apply_two_mode(s, 1, 2, balanced());
  CHECK(std::abs(s.at(0, 1, 0, 0) - Complex(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(s.at(1, 0, 0, 0) - Complex(-1 / std::sqrt(2.0))) < 1e-12);
  CHECK(s.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("Hong-Ou-Mandel: balanced splitter on |11>") {
  FockState s = basis_state({1, 1, 0, 0}, kSmall);
  apply_two_mode(s, 1, 2, balanced());
  CHECK(std::abs(s.at(1, 1, 0, 0)) < 1e-12);
  CHECK(std::abs(s.at(0, 2, 0, 0) - Complex(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(s.at(2, 0, 0, 0) - Complex(-1 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("two-photon reference states from the printed transforms") {
  const Mat2cd id = Mat2cd::Identity();
  const PassiveUnitary u1 = csd_compose(balanced(), balanced(), id, id, 0, 0);
  const FockState psi1 = apply_passive(basis_state({0, 1, 0, 1}, kSmall), u1);
  const FockState psi2 = apply_passive(basis_state({0, 0, 1, 1}, kSmall),
                                       pair_mixing_unitary());
  CHECK(fidelity(psi1, psi1_reference(kSmall)) == doctest::Approx(1.0));
  CHECK(fidelity(psi2, psi2_reference(kSmall)) == doctest::Approx(1.0));
  // Sign-sensitive: the amplitudes themselves, not just the fidelity.
  CHECK(std::abs(psi2.at(1, 1, 0, 0) - Complex(0.5)) < 1e-12);
  CHECK(std::abs(psi2.at(1, 0, 0, 1) - Complex(-0.5)) < 1e-12);
  CHECK(std::abs(psi1.at(1, 0, 1, 0) - Complex(0.5)) < 1e-12);
  CHECK(std::abs(psi1.at(0, 1, 0, 1) - Complex(0.5)) < 1e-12);
}

TEST_CASE("apply_passive conserves photon number and norm") {
  std::mt19937 rng(3);
  std::normal_distribution<double> n;
  FockState s(kSmall);
  // Random two-photon state.
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2 - a; ++b)
      for (int c = 0; c <= 2 - a - b; ++c)
        s.at(a, b, c, 2 - a - b - c) = Complex(n(rng), n(rng));
  s.renormalize();
  const FockState out = apply_passive(s, max_entangling_unitary());
  CHECK(out.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          if (a + b + c + d != 2) CHECK(std::abs(out.at(a, b, c, d)) < 1e-12);
}

TEST_CASE("apply_passive is a representation: u1*u2 = sequential action") {
  std::mt19937 rng(5);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (int trial = 0; trial < 5; ++trial) {
    FockState s(kSmall);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3 - a; ++b)
        for (int c = 0; c <= 3 - a - b; ++c)
          s.at(a, b, c, 3 - a - b - c) = Complex(n(rng), n(rng));
    s.renormalize();
    const PassiveUnitary u1 =
        quarter_wave(1, 2, angle(rng)) * pair_mixing_unitary();
    const PassiveUnitary u2 =
        half_wave(3, 4, angle(rng)) * max_entangling_unitary();
    const FockState lhs = apply_passive(s, u1 * u2);
    const FockState rhs = apply_passive(apply_passive(s, u2), u1);
    double diff = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      diff = std::max(diff,
                      std::abs(lhs.amplitudes()[i] - rhs.amplitudes()[i]));
    }
    CHECK(diff < 1e-10);
  }
}

TEST_CASE("single-mode squeeze reproduces the squeezed-vacuum series") {
  const double u = 0.3;
  const FockState s =
      apply_squeeze(basis_state({0, 0, 0, 0}, {20, 0, 0, 0}), 1, u);
  // exp[u(a^2 - a^dag^2)/2] |0> = sech^(1/2) sum (-tanh u)^n sqrt((2n)!)
  // / (2^n n!) |2n>.
  const double th = std::tanh(u);
  double fact2n = 1.0, fact_n = 1.0, pow2 = 1.0, powth = 1.0;
  for (int n = 0; n <= 9; ++n) {
    if (n > 0) {
      fact2n *= (2.0 * n) * (2.0 * n - 1);
      fact_n *= n;
      pow2 *= 2;
      powth *= -th;
    }
    const double expect =
        powth * std::sqrt(fact2n) / (pow2 * fact_n) / std::sqrt(std::cosh(u));
    CHECK(std::abs(s.at(2 * n, 0, 0, 0) - Complex(expect)) < 1e-10);
    if (n <= 4) CHECK(std::abs(s.at(2 * n + 1, 0, 0, 0)) < 1e-14);
  }
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.tail() < kTruncationBudget);
}

TEST_CASE("squeeze guards: identity, argument bound, truncation error") {
  const FockState vac = basis_state({0, 0, 0, 0}, kSmall);
  const FockState same = apply_squeeze(vac, 2, 0.0);
  CHECK(std::abs(same.at(0, 0, 0, 0) - Complex(1)) < 1e-14);
  CHECK_THROWS_AS(apply_squeeze(vac, 1, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(apply_squeeze(basis_state({0, 0, 0, 0}, {2, 0, 0, 0}), 1,
                                1.5),
                  TruncationError);
}

TEST_CASE("pair coherent state construction") {
  CHECK(std::abs(pcs_pair({Complex(0, 0), 0}, 6).at(0, 0, 0, 0) -
                 Complex(1)) < 1e-12);
  const double zeta = 0.7;
  const FockState s = pcs_pair({Complex(zeta, 0), 0}, 12);
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  // Per-pair amplitude ratio c1/c0 = zeta before (and after) normalization.
  CHECK(std::abs(s.at(1, 0, 1, 0) / s.at(0, 0, 0, 0) - Complex(zeta)) <
        1e-12);
  // q = 1 puts the photon-number offset on the first mode of each pair.
  const FockState q1 = pcs_pair({Complex(0.4, 0), 1}, 12);
  CHECK(std::abs(q1.at(0, 0, 1, 0)) < 1e-15);
  CHECK(std::abs(q1.at(1, 1, 0, 0)) > 0.5);
}

TEST_CASE("PCS second moments match the printed pair covariance") {
  for (const double zeta : {0.2, 0.5, 1.0}) {
    for (const int q : {0, 1}) {
      const int cutoff = 16;
      const FockState s = pcs_pair({Complex(zeta, 0), q}, cutoff);
      const Mat8 v = covariance_from_fock(s);
      // Mean photon numbers of the pair (1,3) from the tensor itself.
      double n1 = 0, n2 = 0;
      for (int a = 0; a <= cutoff; ++a)
        for (int b = 0; b <= cutoff; ++b)
          for (int c = 0; c <= cutoff; ++c)
            for (int d = 0; d <= cutoff; ++d) {
              const double w = std::norm(s.at(a, b, c, d));
              if (w == 0.0) continue;
              n1 += a * w;
              n2 += c * w;
            }
      // Printed V(zeta, q) on (q_a, q_b, p_a, p_b) for the pair (1,3):
      // diag N_i + 1/2, Re zeta on q_a q_b, -Re zeta on p_a p_b,
      // Im zeta on the q-p cross terms (zero here, zeta real).
      const int qa = 0, qb = 2, pa = 4, pb = 6;  // modes 1 and 3
      CHECK(v(qa, qa) == doctest::Approx(n1 + 0.5).epsilon(1e-8));
      CHECK(v(qb, qb) == doctest::Approx(n2 + 0.5).epsilon(1e-8));
      CHECK(v(qa, qb) == doctest::Approx(zeta).epsilon(1e-8));
      CHECK(v(pa, pb) == doctest::Approx(-zeta).epsilon(1e-8));
      CHECK(std::abs(v(qa, pb)) < 1e-8);
      CHECK(std::abs(v(qa, pa)) < 1e-8);
      // Identical pair on modes (2,4); no cross-pair correlations.
      CHECK(v(1, 3) == doctest::Approx(zeta).epsilon(1e-8));
      CHECK(std::abs(v(0, 1)) < 1e-8);
      CHECK(std::abs(v(0, 3)) < 1e-8);
    }
  }
}

TEST_CASE("entangled coherent state basics") {
  const FockState s = ecs_pair({Complex(0.6, 0)}, 16);
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
  // alpha -> 0 limit is the psi2 two-photon state.
  const FockState tiny = ecs_pair({Complex(0.01, 0)}, 8);
  CHECK(fidelity(tiny, psi2_reference({8, 8, 8, 8})) > 1.0 - 1e-3);
  const FockState mid = ecs_pair({Complex(0.05, 0)}, 10);
  CHECK(fidelity(mid, psi2_reference({10, 10, 10, 10})) > 1.0 - 1e-2);
}

TEST_CASE("attenuation of a single photon gives diag(1-t, t)") {
  const FockState one = basis_state({1, 0, 0, 0}, {2, 0, 0, 0});
  for (double t : {1.0, 0.65, 0.0}) {
    const FockDensity rho = attenuate_fock(one, t);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    double p0 = 0, p1 = 0;
    for (const auto& branch : rho.branches()) {
      p0 += std::norm(branch.at(0, 0, 0, 0));
      p1 += std::norm(branch.at(1, 0, 0, 0));
    }
    CHECK(p0 == doctest::Approx(1.0 - t));
    CHECK(p1 == doctest::Approx(t));
  }
}

TEST_CASE("Fock attenuation matches the Gaussian channel on moments") {
  FockState s = basis_state({0, 0, 0, 0}, {20, 20, 0, 0});
  s = apply_squeeze(s, 1, 0.3);
  s = apply_squeeze(s, 2, -0.2);
  const Mat8 before = covariance_from_fock(s);
  const GaussianState g0(before);
  const double t = 0.7;
  const Mat8 fock_after = covariance_from_fock(attenuate_fock(s, t));
  const Mat8 gauss_after = attenuate(g0, t).covariance();
  CHECK((fock_after - gauss_after).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("attenuation channel composes in the Fock picture") {
  FockState s = basis_state({0, 0, 0, 0}, {18, 0, 0, 0});
  s = apply_squeeze(s, 1, 0.25);
  const FockDensity first = attenuate_fock(s, 0.8);
  std::vector<FockState> acc;
  for (const auto& b : first.branches()) {
    const FockDensity second = attenuate_fock(b, 0.5);
    acc.insert(acc.end(), second.branches().begin(),
               second.branches().end());
  }
  const Mat8 twice = covariance_from_fock(FockDensity(std::move(acc)));
  const Mat8 once = covariance_from_fock(attenuate_fock(s, 0.4));
  CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("polarizer vacuum probabilities on the reference states") {
  const FockState psi1 = psi1_reference(kSmall);
  const FockState psi2 = psi2_reference(kSmall);
  // Every psi1 branch has exactly one photon in direction k.
  CHECK(polarizer_vacuum_prob(psi1, mode_mask({1, 2}), 0.9, 1.7) ==
        doctest::Approx(0.0));
  CHECK(polarizer_vacuum_prob(psi1, kAllModes, 0.4, 2.2) ==
        doctest::Approx(0.0));
  // psi2 branches |1100> and |0011> are vacuum on one direction each.
  CHECK(polarizer_vacuum_prob(psi2, kAllModes, 1.1, 0.3) ==
        doctest::Approx(0.0));
  CHECK(polarizer_vacuum_prob(psi2, mode_mask({1, 2}), 0.0, 0.0) ==
        doctest::Approx(0.25));
  CHECK(vacuum_probability(psi2, mode_mask({3, 4})) == doctest::Approx(0.25));
  const FockState vac = basis_state({0, 0, 0, 0}, kSmall);
  CHECK(polarizer_vacuum_prob(vac, mode_mask({1}), 0.31, 0.0) ==
        doctest::Approx(1.0));
}

TEST_CASE("cross-backend overlap agreement pins the rotation convention") {
  // Build an asymmetric squeezed state both ways and require the polarizer
  // overlaps to agree for angle-dependent masks; symmetric states cannot
  // detect a rotation-sign error, this one can.
  const double u = 0.3, v = -0.2;
  FockState fs = basis_state({0, 0, 0, 0}, {24, 24, 24, 24});
  fs = apply_squeeze(fs, 1, u);
  fs = apply_squeeze(fs, 2, u);
  fs = apply_squeeze(fs, 3, v);
  fs = apply_squeeze(fs, 4, v);
  const PassiveUnitary mix =
      quarter_wave(1, 2, 0.7) * max_entangling_unitary();
  fs = apply_passive(fs, mix);

  GaussianState gs = thermal_state({1.0});
  gs = apply_symplectic(gs, squeezer_block({u, v}));
  gs = apply_symplectic(gs, embed_passive(mix));
  // The moments themselves must agree first.
  CHECK((covariance_from_fock(fs) - gs.covariance()).cwiseAbs().maxCoeff() <
        1e-7);

  for (const ModeMask mask :
       {mode_mask({1}), mode_mask({3}), mode_mask({1, 3}),
        mode_mask({1, 2}), kAllModes}) {
    for (const double t1 : {0.0, 0.9, 2.4}) {
      for (const double t2 : {0.0, 1.32}) {
        const double a = polarizer_vacuum_prob(fs, mask, t1, t2);
        const double b = vacuum_overlap(gs, mask, t1, t2);
        CAPTURE(mask);
        CAPTURE(t1);
        CAPTURE(t2);
        CHECK(std::abs(a - b) < 1e-6);
      }
    }
  }
}

TEST_CASE("squeezed vacuum overlap cross-check at cutoff 40") {
  const double u = 0.3;
  FockState fs = basis_state({0, 0, 0, 0}, {40, 0, 0, 0});
  fs = apply_squeeze(fs, 1, u);
  Mat8 v = 0.5 * Mat8::Identity();
  v(0, 0) = 0.5 * std::exp(-2 * u);
  v(4, 4) = 0.5 * std::exp(2 * u);
  const double gauss = vacuum_overlap(GaussianState(v), mode_mask({1}), 0, 0);
  CHECK(std::abs(vacuum_probability(fs, mode_mask({1})) - gauss) < 1e-6);
  CHECK(gauss == doctest::Approx(1.0 / std::cosh(u)));
}
