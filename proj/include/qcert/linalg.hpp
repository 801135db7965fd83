// Copyright 2026 The qcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small fixed-size complex linear algebra for one qubit (2x2) and its Choi
// space (4x4). Everything here is a pure function of its arguments.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace qcert {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Ket = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

namespace tol {
/// Invariant checks on states, channels and POVMs.
inline constexpr double kValidation = 1e-9;
/// Algebraic self-consistency identities.
inline constexpr double kIdentity = 1e-12;
}  // namespace tol

inline constexpr Complex kI{0.0, 1.0};

namespace gates {

inline Mat2 identity() { return Mat2::Identity(); }

inline Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

inline Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat2 h() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::numbers::sqrt2;
}

inline Mat2 s() {
  Mat2 m;
  m << 1, 0, 0, kI;
  return m;
}

inline Mat2 s_dagger() { return s().adjoint(); }

inline Mat2 t() {
  Mat2 m;
  m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
  return m;
}

inline Mat2 zt() { return z() * t(); }

}  // namespace gates

namespace kets {

inline Ket zero() { return Ket(1, 0); }
inline Ket one() { return Ket(0, 1); }
inline Ket plus() { return Ket(1, 1) / std::numbers::sqrt2; }
inline Ket minus() { return Ket(1, -1) / std::numbers::sqrt2; }

}  // namespace kets

inline Mat2 projector(const Ket& v) { return v * v.adjoint(); }

/// Largest absolute entry.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

/// Multiplies `v` by the phase that makes its largest-magnitude entry real
/// and positive. Near-ties (within 1e-12 relative) resolve to the lowest index.
template <typename Derived>
void fix_global_phase(Eigen::MatrixBase<Derived>& v) {
  Eigen::Index best = 0;
  double best_abs = std::abs(v(0));
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    const double a = std::abs(v(k));
    if (a > best_abs * (1.0 + 1e-12) + 1e-300) {
      best = k;
      best_abs = a;
    }
  }
  if (best_abs > 0) {
    v *= std::conj(v(best)) / best_abs;
  }
}

/// Spectral decomposition of a 2x2 Hermitian matrix: values ascending, with
/// vectors(:, k) the unit eigenvector for values[k]. Closed form; each
/// eigenvector has its global phase fixed by `fix_global_phase`.
struct HermEig2 {
  std::array<double, 2> values{};
  std::array<Ket, 2> vectors{};
};

inline HermEig2 eig_hermitian(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double r = std::hypot(half_gap, std::abs(b));

  HermEig2 out;
  out.values = {mean - r, mean + r};
  Ket top;
  if (r == 0.0) {
    top = kets::zero();
  } else if (half_gap >= 0) {
    // second row of (m - lambda) v = 0 rearranged; nonzero since half_gap + r > 0
    top = Ket(half_gap + r, std::conj(b));
  } else {
    top = Ket(b, r - half_gap);
  }
  top.normalize();
  Ket bottom(-std::conj(top(1)), std::conj(top(0)));
  fix_global_phase(top);
  fix_global_phase(bottom);
  out.vectors = {bottom, top};
  return out;
}

/// Operator norm of a Hermitian 2x2 matrix.
inline double spectral_norm_hermitian(const Mat2& m) {
  const auto e = eig_hermitian(m);
  return std::max(std::abs(e.values[0]), std::abs(e.values[1]));
}

/// Ascending eigenvalues of a Hermitian 4x4 matrix.
inline Eigen::Vector4d eigenvalues_hermitian(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(0.5 * (m + m.adjoint()),
                                             Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// a (x) b with a as the first (most significant) factor.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Index into the 4-dim product space |a>|b>, a = first factor.
constexpr int pair_index(int a, int b) { return 2 * a + b; }

/// Tr over the first tensor factor.
inline Mat2 trace_first(const Mat4& m) {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        out(b, bp) += m(pair_index(a, b), pair_index(a, bp));
  return out;
}

/// Tr over the second tensor factor.
inline Mat2 trace_second(const Mat4& m) {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        out(a, ap) += m(pair_index(a, b), pair_index(ap, b));
  return out;
}

inline bool is_unitary(const Mat2& u, double tolerance = tol::kValidation) {
  return max_abs(u.adjoint() * u - Mat2::Identity()) <= tolerance;
}

/// |Tr(A^dag B)| / 2: equals 1 exactly when A and B agree up to a global phase
/// (for unitaries A, B).
inline double phase_insensitive_overlap(const Mat2& a, const Mat2& b) {
  return std::abs((a.adjoint() * b).trace()) / 2.0;
}

/// exp(alpha * i (n . sigma)) for a unit vector n, in closed form.
inline Mat2 su2_exponential(const std::array<double, 3>& n, double alpha) {
  const Mat2 generator = n[0] * gates::x() + n[1] * gates::y() + n[2] * gates::z();
  return std::cos(alpha) * Mat2::Identity() + kI * std::sin(alpha) * generator;
}

}  // namespace qcert
