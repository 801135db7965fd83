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

// Generators and reference implementations shared by the unit tests. The
// references deliberately avoid the library's own index bookkeeping: Choi
// matrices are assembled with Eigen's Kronecker product straight from the
// defining sum, and unitaries come from a QR factorization.

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

#include <cstdint>
#include <functional>

#include "qcert/qcert.hpp"

namespace qcert::testing {

using MatX = Eigen::MatrixXcd;

inline Complex gaussian_complex(CounterRng& rng) { return {rng.normal(), rng.normal()}; }

inline MatX gaussian_matrix(CounterRng& rng, int rows, int cols) {
  MatX g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = gaussian_complex(rng);
  return g;
}

/// Q factor of a complex Gaussian matrix, columns rephased by R's diagonal.
inline MatX random_isometry(CounterRng& rng, int rows, int cols) {
  const MatX g = gaussian_matrix(rng, rows, rows);
  Eigen::HouseholderQR<MatX> qr(g);
  MatX q = qr.householderQ();
  const MatX r = qr.matrixQR();
  for (int c = 0; c < rows; ++c) q.col(c) *= std::polar(1.0, std::arg(r(c, c)));
  return q.leftCols(cols);
}

inline Mat2 random_unitary(CounterRng& rng) { return random_isometry(rng, 2, 2); }

inline Ket random_ket(CounterRng& rng) {
  Ket v(gaussian_complex(rng), gaussian_complex(rng));
  return v / v.norm();
}

inline Mat2 random_density(CounterRng& rng) {
  const MatX g = gaussian_matrix(rng, 2, 2);
  const Mat2 r = g * g.adjoint();
  return r / r.trace().real();
}

inline Mat4 random_psd4(CounterRng& rng) {
  const MatX g = gaussian_matrix(rng, 4, 4);
  return g * g.adjoint();
}

/// Kraus operators of a random channel with `rank` Kraus terms, taken from
/// the blocks of a random (2 rank) x 2 isometry.
inline std::vector<Mat2> random_kraus(CounterRng& rng, int rank) {
  const MatX v = random_isometry(rng, 2 * rank, 2);
  std::vector<Mat2> ks;
  for (int k = 0; k < rank; ++k) ks.push_back(v.block(2 * k, 0, 2, 2));
  return ks;
}

inline Mat2 apply_kraus(const std::vector<Mat2>& ks, const Mat2& x) {
  Mat2 out = Mat2::Zero();
  for (const auto& k : ks) out += k * x * k.adjoint();
  return out;
}

/// C = 1/2 sum_ij L(|i><j|) (x) |i><j|.
inline Mat4 reference_choi(const std::function<Mat2(const Mat2&)>& map) {
  Mat4 c = Mat4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat2 e = Mat2::Zero();
      e(i, j) = 1.0;
      c += 0.5 * Mat4(Eigen::kroneckerProduct(map(e), e));
    }
  return c;
}

inline ChoiChannel random_channel(CounterRng& rng, int rank = 4) {
  const auto ks = random_kraus(rng, rank);
  return ChoiChannel::from_matrix(reference_choi([&](const Mat2& x) { return apply_kraus(ks, x); }));
}

/// Eigenvalues of a general complex matrix, real parts sorted ascending.
inline std::vector<double> reference_eigenvalues(const MatX& m) {
  Eigen::ComplexEigenSolver<MatX> es(m);
  std::vector<double> v;
  for (int k = 0; k < es.eigenvalues().size(); ++k) v.push_back(es.eigenvalues()(k).real());
  std::sort(v.begin(), v.end());
  return v;
}

/// Frobenius distance modulo a global phase.
inline double phase_free_distance(const MatX& a, const MatX& b) {
  const Complex ip = (b.adjoint() * a).trace();
  const Complex phase = std::abs(ip) > 0 ? ip / std::abs(ip) : Complex(1.0);
  return (a - phase * b).norm();
}

inline QuantumModel model_with(const Mat2& rho, const std::map<GateLabel, Mat2>& gates,
                               const Mat2& m_plus) {
  QuantumModel m{QubitState::from_matrix(rho), {}, Povm::from_plus(m_plus)};
  for (const auto& [g, u] : gates) m.channels.emplace(g, choi_of_unitary(u));
  return m;
}

}  // namespace qcert::testing
