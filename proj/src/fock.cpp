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

#include "cvbell/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr int kMaxFactorial = 170;  // largest n! representable in a double

const std::vector<double>& factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> f(kMaxFactorial + 1);
    f[0] = 1.0;
    for (int n = 1; n <= kMaxFactorial; ++n) f[n] = f[n - 1] * n;
    return f;
  }();
  return table;
}

void check_mode_pair(int i, int j) {
  if (i < 1 || i > kNumModes || j < 1 || j > kNumModes || i == j) {
    throw std::invalid_argument("mode indices must be distinct and in 1..4");
  }
}

/// Matrix of the metaplectic two-mode action of a 2x2 unitary g on the
/// total-photon-number-N block, ordered by the photon count of the first
/// mode. Column n maps |n, N-n> to sum_m B(m, n) |m, N-m>.
Eigen::MatrixXcd two_mode_block(const Mat2cd& g, int total) {
  const auto& fact = factorials();
  if (total > kMaxFactorial) {
    throw ResourceLimitError("two-mode block exceeds factorial range");
  }
  // Powers of the four matrix entries up to `total`.
  std::array<std::vector<Complex>, 4> pw;
  for (int e = 0; e < 4; ++e) {
    pw[e].resize(total + 1);
    pw[e][0] = 1.0;
    const Complex base = g(e / 2, e % 2);
    for (int k = 1; k <= total; ++k) pw[e][k] = pw[e][k - 1] * base;
  }
  Eigen::MatrixXcd block(total + 1, total + 1);
  for (int n = 0; n <= total; ++n) {
    const int rest = total - n;
    for (int m = 0; m <= total; ++m) {
      const int klo = std::max(0, m - rest);
      const int khi = std::min(n, m);
      Complex sum = 0.0;
      for (int k = klo; k <= khi; ++k) {
        const double comb = (fact[n] / (fact[k] * fact[n - k])) *
                            (fact[rest] / (fact[m - k] * fact[rest - m + k]));
        sum += comb * pw[0][k] * pw[2][n - k] * pw[1][m - k] *
               pw[3][rest - m + k];
      }
      block(m, n) = sum * std::sqrt(fact[m] * fact[total - m] /
                                    (fact[n] * fact[total - n]));
    }
  }
  return block;
}

Mat2cd direction_rotation(double theta) {
  // Adjoint of the polarizer block R(theta); the state is counter-rotated
  // so that the projector stays on the unrotated mode.
  Mat2cd g;
  g << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return g;
}

bool needs_rotation(ModeMask modes, int a, int b) {
  const bool in_a = modes & (1u << (a - 1));
  const bool in_b = modes & (1u << (b - 1));
  return in_a != in_b;
}

double vacuum_mass(const FockState& s, ModeMask modes) {
  double sum = 0.0;
  const auto& c = s.cutoffs();
  for (int n1 = 0; n1 <= ((modes & 1u) ? 0 : c[0]); ++n1)
    for (int n2 = 0; n2 <= ((modes & 2u) ? 0 : c[1]); ++n2)
      for (int n3 = 0; n3 <= ((modes & 4u) ? 0 : c[2]); ++n3)
        for (int n4 = 0; n4 <= ((modes & 8u) ? 0 : c[3]); ++n4)
          sum += std::norm(s.at(n1, n2, n3, n4));
  return sum;
}

}  // namespace

FockState::FockState(const std::array<int, 4>& cutoffs) : cutoffs_(cutoffs) {
  std::size_t total = 1;
  for (int c : cutoffs) {
    if (c < 0) throw std::invalid_argument("cutoff must be nonnegative");
    total *= static_cast<std::size_t>(c) + 1;
  }
  if (total > (std::size_t{1} << 26)) {
    throw ResourceLimitError("Fock tensor would exceed the memory guard");
  }
  strides_[3] = 1;
  for (int m = 2; m >= 0; --m) {
    strides_[m] = strides_[m + 1] * (cutoffs_[m + 1] + 1);
  }
  amp_.assign(total, Complex(0.0, 0.0));
}

std::size_t FockState::index(int n1, int n2, int n3, int n4) const {
  return n1 * strides_[0] + n2 * strides_[1] + n3 * strides_[2] +
         n4 * strides_[3];
}

FockState FockState::basis(const std::array<int, 4>& photons,
                           const std::array<int, 4>& cutoffs) {
  for (int m = 0; m < 4; ++m) {
    if (photons[m] < 0 || photons[m] > cutoffs[m]) {
      throw std::invalid_argument("photon count exceeds cutoff");
    }
  }
  FockState s(cutoffs);
  s.at(photons[0], photons[1], photons[2], photons[3]) = 1.0;
  return s;
}

double FockState::norm_squared() const {
  double sum = 0.0;
  for (const Complex& a : amp_) sum += std::norm(a);
  return sum;
}

void FockState::renormalize() {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw NumericalError("cannot renormalize a zero state");
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : amp_) a *= inv;
}

double FockDensity::trace() const {
  double sum = 0.0;
  for (const auto& b : branches_) sum += b.norm_squared();
  return sum;
}

FockState basis_state(const std::array<int, 4>& photons,
                      const std::array<int, 4>& cutoffs) {
  return FockState::basis(photons, cutoffs);
}

void apply_two_mode(FockState& s, int i, int j, const Mat2cd& g) {
  check_mode_pair(i, j);
  if ((g * g.adjoint() - Mat2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("two-mode matrix is not unitary");
  }
  const int i0 = i - 1, j0 = j - 1;
  const int ci = s.cutoffs()[i0], cj = s.cutoffs()[j0];
  const std::size_t si = s.stride(i0);
  const std::size_t sj = s.stride(j0);

  // Blocks by total photon number, built lazily.
  std::vector<Eigen::MatrixXcd> blocks(ci + cj + 1);
  std::vector<bool> built(ci + cj + 1, false);

  int others[2], on = 0;
  for (int m = 0; m < 4; ++m) {
    if (m != i0 && m != j0) others[on++] = m;
  }
  const int da = s.cutoffs()[others[0]] + 1;
  const int db = s.cutoffs()[others[1]] + 1;
  const std::size_t sa = s.stride(others[0]);
  const std::size_t sb = s.stride(others[1]);

  auto& amp = s.amplitudes();
  double dropped = 0.0;
  Eigen::VectorXcd x, y;
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) {
      const std::size_t base = a * sa + b * sb;
      for (int total = 0; total <= ci + cj; ++total) {
        const int lo = std::max(0, total - cj);
        const int hi = std::min(ci, total);
        if (lo > hi) continue;
        const int w = hi - lo + 1;
        x.resize(w);
        bool zero = true;
        for (int n = lo; n <= hi; ++n) {
          const Complex v = amp[base + n * si + (total - n) * sj];
          x[n - lo] = v;
          if (v != Complex(0.0, 0.0)) zero = false;
        }
        if (zero) continue;
        if (!built[total]) {
          blocks[total] = two_mode_block(g, total);
          built[total] = true;
        }
        y.noalias() = blocks[total].middleCols(lo, w) * x;
        for (int m = 0; m <= total; ++m) {
          if (m < lo || m > hi) {
            dropped += std::norm(y[m]);
          } else {
            amp[base + m * si + (total - m) * sj] = y[m];
          }
        }
      }
    }
  }
  s.add_tail(dropped);
}

FockState apply_passive(const FockState& s, const PassiveUnitary& u) {
  // Factor u = G_1^dag ... G_k^dag D with adjacent-mode Givens rotations.
  Mat4cd t = u.matrix();
  struct Givens {
    int row;  // acts on modes (row, row+1), 0-based
    Mat2cd g;
  };
  std::vector<Givens> givens;
  for (int c = 0; c < 4; ++c) {
    for (int r = 3; r > c; --r) {
      const Complex a = t(r - 1, c), b = t(r, c);
      if (std::abs(b) < 1e-14) continue;
      const double h = std::sqrt(std::norm(a) + std::norm(b));
      Mat2cd g;
      g << std::conj(a) / h, std::conj(b) / h, -b / h, a / h;
      Mat4cd emb = Mat4cd::Identity();
      emb.block<2, 2>(r - 1, r - 1) = g;
      t = emb * t;
      givens.push_back({r - 1, g});
    }
  }
  FockState out = s;
  // Residual diagonal of phases.
  for (int m = 0; m < 4; ++m) {
    const Complex d = t(m, m);
    if (std::abs(d - Complex(1.0, 0.0)) < 1e-15) continue;
    auto& amp = out.amplitudes();
    const auto& c = out.cutoffs();
    std::vector<Complex> dpow(c[m] + 1);
    dpow[0] = 1.0;
    for (int n = 1; n <= c[m]; ++n) dpow[n] = dpow[n - 1] * d;
    for (int n1 = 0; n1 <= c[0]; ++n1)
      for (int n2 = 0; n2 <= c[1]; ++n2)
        for (int n3 = 0; n3 <= c[2]; ++n3)
          for (int n4 = 0; n4 <= c[3]; ++n4) {
            const int n[4] = {n1, n2, n3, n4};
            amp[out.index(n1, n2, n3, n4)] *= dpow[n[m]];
          }
  }
  for (auto it = givens.rbegin(); it != givens.rend(); ++it) {
    apply_two_mode(out, it->row + 1, it->row + 2, it->g.adjoint());
  }
  return out;
}

FockState apply_squeeze(const FockState& s, int mode, double u,
                        double budget) {
  if (mode < 1 || mode > kNumModes) {
    throw std::invalid_argument("mode index must be in 1..4");
  }
  if (!std::isfinite(u) || std::abs(u) > 2.0) {
    throw std::invalid_argument("squeeze amount must be finite and |u| <= 2");
  }
  const int m0 = mode - 1;
  const int cutoff = s.cutoffs()[m0];
  if (u == 0.0) return s;

  // Exponentiate the generator on an enlarged ladder so the restriction to
  // the stored window is accurate; the mass left above the cutoff is the
  // measured tail.
  const int margin =
      std::max(16, static_cast<int>(std::ceil(
                       (std::exp(2.0 * std::abs(u)) - 1.0) * cutoff)) +
                       16);
  const int cw = cutoff + margin;
  if (cw > 2048) {
    throw ResourceLimitError("squeeze working cutoff exceeds guard");
  }
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(cw + 1, cw + 1);
  for (int n = 2; n <= cw; ++n) {
    gen(n - 2, n) += 0.5 * u * std::sqrt(double(n) * (n - 1));
  }
  for (int n = 0; n + 2 <= cw; ++n) {
    gen(n + 2, n) -= 0.5 * u * std::sqrt(double(n + 1) * (n + 2));
  }
  const Eigen::MatrixXd op = gen.exp().leftCols(cutoff + 1);

  FockState out = s;
  auto& amp = out.amplitudes();
  const auto& c = out.cutoffs();
  const std::size_t sm = out.stride(m0);
  int others[3], on = 0;
  for (int m = 0; m < 4; ++m) {
    if (m != m0) others[on++] = m;
  }
  std::size_t so[3];
  int do_[3];
  for (int k = 0; k < 3; ++k) {
    so[k] = out.stride(others[k]);
    do_[k] = c[others[k]] + 1;
  }
  double dropped = 0.0;
  Eigen::VectorXd xr(cutoff + 1), xi(cutoff + 1);
  Eigen::VectorXd yr, yi;
  for (int a = 0; a < do_[0]; ++a) {
    for (int b = 0; b < do_[1]; ++b) {
      for (int d = 0; d < do_[2]; ++d) {
        const std::size_t base = a * so[0] + b * so[1] + d * so[2];
        bool zero = true;
        for (int n = 0; n <= cutoff; ++n) {
          const Complex v = amp[base + n * sm];
          xr[n] = v.real();
          xi[n] = v.imag();
          if (v != Complex(0.0, 0.0)) zero = false;
        }
        if (zero) continue;
        yr.noalias() = op * xr;
        yi.noalias() = op * xi;
        for (int n = 0; n <= cutoff; ++n) {
          amp[base + n * sm] = Complex(yr[n], yi[n]);
        }
        for (int n = cutoff + 1; n <= cw; ++n) {
          dropped += yr[n] * yr[n] + yi[n] * yi[n];
        }
      }
    }
  }
  out.add_tail(dropped);
  if (dropped > budget) {
    char msg[96];
    std::snprintf(msg, sizeof(msg),
                  "squeeze pushed %.3g probability mass above the cutoff",
                  dropped);
    throw TruncationError(msg, dropped);
  }
  return out;
}

FockState pcs_pair(const PcsParams& p, int cutoff, double budget) {
  if (p.q < 0) throw std::invalid_argument("photon-number difference q >= 0");
  if (!std::isfinite(std::abs(p.zeta))) {
    throw std::invalid_argument("zeta must be finite");
  }
  if (cutoff < p.q) {
    throw std::invalid_argument("cutoff must be at least q");
  }
  const auto& fact = factorials();
  const int nmax = cutoff - p.q;

  // Unnormalized coefficients c_n = zeta^n / sqrt(n! (n+q)!).
  std::vector<Complex> coef(nmax + 1);
  double norm2 = 0.0;
  Complex zpow = 1.0;
  for (int n = 0; n <= nmax; ++n) {
    coef[n] = zpow / std::sqrt(fact[n] * fact[n + p.q]);
    norm2 += std::norm(coef[n]);
    zpow *= p.zeta;
  }
  // Tail of the normalization series above the cutoff.
  double tail = 0.0;
  {
    const double z2 = std::norm(p.zeta);
    double term = std::norm(coef[nmax]);
    for (int n = nmax + 1; n <= nmax + 200; ++n) {
      term *= z2 / (double(n) * (n + p.q));
      tail += term;
      if (term < 1e-300) break;
    }
  }
  const double pair_tail = tail / (norm2 + tail);
  // Two independent pairs; first-order combined tail.
  const double total_tail = 2.0 * pair_tail;
  if (total_tail > budget) {
    throw TruncationError(
        "pair-coherent tail " + std::to_string(total_tail) +
            " exceeds the truncation budget; raise the cutoff",
        total_tail);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : coef) c *= inv;

  FockState s({cutoff, cutoff, cutoff, cutoff});
  for (int n = 0; n <= nmax; ++n) {
    for (int m = 0; m <= nmax; ++m) {
      s.at(n + p.q, m + p.q, n, m) = coef[n] * coef[m];
    }
  }
  s.add_tail(total_tail);
  return s;
}

FockState ecs_pair(const EcsParams& p, int cutoff, double budget) {
  const double a2 = std::norm(p.alpha);
  if (!(a2 > 0.0) || !std::isfinite(a2)) {
    throw std::invalid_argument("alpha must be nonzero and finite");
  }
  const auto& fact = factorials();
  // Odd coherent state N_o (|alpha> - |-alpha>): odd Fock amplitudes only.
  std::vector<Complex> coef(cutoff + 1, Complex(0.0, 0.0));
  double norm2 = 0.0;
  Complex apow = p.alpha;
  for (int n = 1; n <= cutoff; n += 2) {
    coef[n] = apow / std::sqrt(fact[n]);
    norm2 += std::norm(coef[n]);
    apow *= p.alpha * p.alpha;
  }
  double tail = 0.0;
  {
    // Continuation of sum_{n > cutoff, odd} |alpha|^{2n} / n!.
    double term = 1.0;
    for (int n = 1; n <= cutoff; ++n) term *= a2 / n;
    for (int n = cutoff + 1; n <= cutoff + 200; ++n) {
      term *= a2 / n;
      if ((n & 1) != 0) tail += term;
      if (term < 1e-300) break;
    }
  }
  const double mode_tail = tail / (norm2 + tail);
  const double total_tail = 2.0 * mode_tail;
  if (total_tail > budget) {
    throw TruncationError(
        "odd-coherent tail " + std::to_string(total_tail) +
            " exceeds the truncation budget; raise the cutoff",
        total_tail);
  }
  const double inv = 1.0 / std::sqrt(norm2);

  FockState s({cutoff, cutoff, cutoff, cutoff});
  for (int n = 1; n <= cutoff; n += 2) {
    for (int m = 1; m <= cutoff; m += 2) {
      s.at(0, 0, n, m) = coef[n] * coef[m] * inv * inv;
    }
  }
  s.add_tail(total_tail);
  return apply_passive(s, pair_mixing_unitary());
}

FockDensity attenuate_fock(const FockState& s, double t,
                           std::size_t max_branches) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  const auto& fact = factorials();
  std::vector<FockState> branches{s};
  for (int mode = 0; mode < 4; ++mode) {
    const int cut = s.cutoffs()[mode];
    std::vector<FockState> next;
    for (const FockState& br : branches) {
      for (int k = 0; k <= cut; ++k) {
        if (k > 0 && t == 1.0) break;
        const double kcoef = std::sqrt(std::pow(1.0 - t, k) / fact[k]);
        FockState nb(br.cutoffs());
        nb.add_tail(br.tail());
        const auto& c = br.cutoffs();
        double n2 = 0.0;
        for (int n1 = 0; n1 <= c[0]; ++n1)
          for (int n2i = 0; n2i <= c[1]; ++n2i)
            for (int n3 = 0; n3 <= c[2]; ++n3)
              for (int n4 = 0; n4 <= c[3]; ++n4) {
                const int n[4] = {n1, n2i, n3, n4};
                if (n[mode] + k > cut) continue;
                int src[4] = {n1, n2i, n3, n4};
                src[mode] += k;
                const Complex v =
                    br.at(src[0], src[1], src[2], src[3]) * kcoef *
                    std::sqrt(fact[n[mode] + k] / fact[n[mode]]) *
                    std::pow(t, 0.5 * n[mode]);
                nb.at(n1, n2i, n3, n4) = v;
                n2 += std::norm(v);
              }
        if (n2 > 1e-16) next.push_back(std::move(nb));
        if (next.size() > max_branches) {
          throw ResourceLimitError("attenuation branch count exceeds guard");
        }
      }
    }
    branches = std::move(next);
  }
  return FockDensity(std::move(branches));
}

double polarizer_vacuum_prob(const FockState& s, ModeMask modes, double theta1,
                             double theta2) {
  if (modes == 0 || modes > kAllModes) {
    throw std::invalid_argument("mode subset must be a nonempty subset of 1..4");
  }
  FockState work = s;
  if (needs_rotation(modes, 1, 2)) {
    apply_two_mode(work, 1, 2, direction_rotation(theta1));
  }
  if (needs_rotation(modes, 3, 4)) {
    apply_two_mode(work, 3, 4, direction_rotation(theta2));
  }
  return vacuum_mass(work, modes);
}

double vacuum_probability(const FockState& s, ModeMask modes) {
  if (modes == 0 || modes > kAllModes) {
    throw std::invalid_argument("mode subset must be a nonempty subset of 1..4");
  }
  return vacuum_mass(s, modes);
}

double polarizer_vacuum_prob(const FockDensity& s, ModeMask modes,
                             double theta1, double theta2) {
  double sum = 0.0;
  for (const auto& br : s.branches()) {
    sum += polarizer_vacuum_prob(br, modes, theta1, theta2);
  }
  return sum;
}

Mat8 covariance_from_fock(const FockState& s) {
  const auto& c = s.cutoffs();
  Mat4cd pair = Mat4cd::Zero();  // <a_i a_j>
  Mat4cd occ = Mat4cd::Zero();   // <a_i^dag a_j>

  auto lowered = [&](int mode) {
    // amplitudes of a_mode |s>, same cutoffs (top level annihilated).
    FockState out(s.cutoffs());
    for (int n1 = 0; n1 <= c[0]; ++n1)
      for (int n2 = 0; n2 <= c[1]; ++n2)
        for (int n3 = 0; n3 <= c[2]; ++n3)
          for (int n4 = 0; n4 <= c[3]; ++n4) {
            int n[4] = {n1, n2, n3, n4};
            if (n[mode] + 1 > c[mode]) continue;
            int src[4] = {n1, n2, n3, n4};
            src[mode] += 1;
            out.at(n1, n2, n3, n4) =
                std::sqrt(double(n[mode] + 1)) *
                s.at(src[0], src[1], src[2], src[3]);
          }
    return out;
  };

  std::array<FockState, 4> low = {lowered(0), lowered(1), lowered(2),
                                  lowered(3)};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex b = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) {
        b += std::conj(low[i].amplitudes()[k]) * low[j].amplitudes()[k];
      }
      occ(i, j) = b;
      // <a_i a_j> = <s | a_i (a_j s)> = <a_i^dag s | a_j s>; reuse lowering
      // on the conjugate side via direct summation instead.
      Complex a = 0.0;
      for (int n1 = 0; n1 <= c[0]; ++n1)
        for (int n2 = 0; n2 <= c[1]; ++n2)
          for (int n3 = 0; n3 <= c[2]; ++n3)
            for (int n4 = 0; n4 <= c[3]; ++n4) {
              int n[4] = {n1, n2, n3, n4};
              int tgt[4] = {n1, n2, n3, n4};
              tgt[i] += 1;
              tgt[j] += 1;
              if (tgt[0] > c[0] || tgt[1] > c[1] || tgt[2] > c[2] ||
                  tgt[3] > c[3]) {
                continue;
              }
              double w = i == j ? std::sqrt(double(n[i] + 1) * (n[i] + 2))
                                : std::sqrt(double(n[i] + 1) * (n[j] + 1));
              a += std::conj(s.at(n1, n2, n3, n4)) * w *
                   s.at(tgt[0], tgt[1], tgt[2], tgt[3]);
            }
      pair(i, j) = a;
    }
  }

  Mat8 v = Mat8::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double re_a = pair(i, j).real(), im_a = pair(i, j).imag();
      const double re_b = occ(i, j).real(), im_b = occ(i, j).imag();
      v(i, j) = re_a + re_b + (i == j ? 0.5 : 0.0);
      v(i + 4, j + 4) = -re_a + re_b + (i == j ? 0.5 : 0.0);
      v(i, j + 4) = im_a + im_b;
      v(i + 4, j) = im_a - im_b;
    }
  }
  return 0.5 * (v + v.transpose());
}

Mat8 covariance_from_fock(const FockDensity& s) {
  Mat8 v = Mat8::Zero();
  double tr = 0.0;
  for (const auto& br : s.branches()) {
    const double w = br.norm_squared();
    if (w <= 0.0) continue;
    FockState unit = br;
    unit.renormalize();
    v += w * covariance_from_fock(unit);
    tr += w;
  }
  if (tr <= 0.0) throw NumericalError("density operator has zero trace");
  return v / tr;
}

double fidelity(const FockState& a, const FockState& b) {
  if (a.cutoffs() != b.cutoffs()) {
    throw std::invalid_argument("fidelity requires matching cutoffs");
  }
  Complex ip = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ip += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
  }
  return std::norm(ip);
}

}  // namespace cvbell
