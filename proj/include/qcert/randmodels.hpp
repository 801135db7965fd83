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

// Random noisy versions of the S-gate target model. Each component gets an
// independent unitary kick exp(alpha * u) with u a unit-norm element of su(2)
// (uniform direction on the sphere) and alpha ~ U[alpha_min, alpha_max].
// The depolarizing and amplitude-damping kinds add a fixed-strength noise
// channel on top: after the state preparation, after each gate and before
// the measurement.

#include <array>
#include <cstdint>
#include <string>

#include "qcert/error.hpp"
#include "qcert/qmodel.hpp"
#include "qcert/rng.hpp"

namespace qcert {

enum class NoiseKind { kUnitary, kDepolarizing, kAmplitudeDamping };

inline const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::kUnitary: return "unitary";
    case NoiseKind::kDepolarizing: return "depolarizing";
    case NoiseKind::kAmplitudeDamping: return "amplitude-damping";
  }
  return "?";
}

inline NoiseKind noise_kind_from_string(std::string_view s) {
  if (s == "unitary") return NoiseKind::kUnitary;
  if (s == "depolarizing") return NoiseKind::kDepolarizing;
  if (s == "amplitude-damping") return NoiseKind::kAmplitudeDamping;
  fail(ErrorCode::kInvalidArgument, "unknown noise kind '" + std::string(s) + "'");
}

struct NoiseConfig {
  NoiseKind kind = NoiseKind::kUnitary;
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  double p = 0.0;      // depolarizing strength
  double gamma = 0.0;  // damping strength
  std::uint64_t seed = 0;

  void validate() const {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(alpha_min) || !unit(alpha_max) || alpha_min > alpha_max)
      fail(ErrorCode::kInvalidArgument, "alpha range must satisfy 0 <= min <= max <= 1");
    if (!unit(p)) fail(ErrorCode::kInvalidArgument, "depolarizing p must lie in [0, 1]");
    if (!unit(gamma)) fail(ErrorCode::kInvalidArgument, "damping gamma must lie in [0, 1]");
  }
};

/// Uniform unit vector on the 2-sphere (normalized Gaussian triple).
inline std::array<double, 3> random_su2_direction(CounterRng& rng) {
  for (;;) {
    std::array<double, 3> n{rng.normal(), rng.normal(), rng.normal()};
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (norm > 1e-12) return {n[0] / norm, n[1] / norm, n[2] / norm};
  }
}

/// exp(alpha u), u = i (n . sigma) with |n| = 1, alpha ~ U[alpha_min, alpha_max].
inline Mat2 random_su2_unitary(CounterRng& rng, double alpha_min = 0.0, double alpha_max = 1.0) {
  const auto n = random_su2_direction(rng);
  const double alpha = rng.uniform(alpha_min, alpha_max);
  return su2_exponential(n, alpha);
}

/// Haar-random element of U(2): uniform quaternion times a uniform phase.
inline Mat2 haar_unitary(CounterRng& rng) {
  std::array<double, 4> q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  const double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (auto& x : q) x /= norm;
  Mat2 u;
  u << Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(-q[2], q[3]), Complex(q[0], -q[1]);
  return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()) * u;
}

/// rho -> (1 - p) rho + p Tr[rho] 1/2.
inline ChoiChannel depolarizing_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    fail(ErrorCode::kInvalidArgument, "depolarizing p must lie in [0, 1]");
  return ChoiChannel::from_action([p](const Mat2& x) -> Mat2 {
    return (1.0 - p) * x + p * x.trace() * 0.5 * Mat2::Identity();
  });
}

/// Kraus operators [[1, 0], [0, sqrt(1-g)]] and [[0, sqrt(g)], [0, 0]].
inline ChoiChannel amplitude_damping_channel(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    fail(ErrorCode::kInvalidArgument, "damping gamma must lie in [0, 1]");
  Mat2 k0, k1;
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  return ChoiChannel::from_action([&](const Mat2& x) -> Mat2 {
    return k0 * x * k0.adjoint() + k1 * x * k1.adjoint();
  });
}

/// Random CPTP map: a Wishart-distributed positive matrix normalized to be
/// trace preserving. Used for property tests over generic channels.
inline ChoiChannel random_cptp_channel(CounterRng& rng) {
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  const Mat4 w = g * g.adjoint();
  const auto te = eig_hermitian(trace_first(w));
  Mat2 inv_sqrt = Mat2::Zero();
  for (int k = 0; k < 2; ++k) inv_sqrt += projector(te.vectors[k]) / std::sqrt(te.values[k]);
  const Mat4 n = kron(Mat2::Identity(), inv_sqrt);
  const Mat4 c = 0.5 * n * w * n.adjoint();
  return ChoiChannel::from_matrix(0.5 * (c + c.adjoint()));
}

/// The `sample_index`-th model of the configuration. Draws come from the
/// counter stream (cfg.seed, sample_index) so generation is order independent.
inline QuantumModel random_noisy_model(const NoiseConfig& cfg, std::uint64_t sample_index = 0) {
  cfg.validate();
  CounterRng rng(cfg.seed, sample_index);
  const Mat2 u1 = random_su2_unitary(rng, cfg.alpha_min, cfg.alpha_max);
  const Mat2 u2 = random_su2_unitary(rng, cfg.alpha_min, cfg.alpha_max);
  const Mat2 u3 = random_su2_unitary(rng, cfg.alpha_min, cfg.alpha_max);
  const Mat2 u4 = random_su2_unitary(rng, cfg.alpha_min, cfg.alpha_max);

  Mat2 rho = u1 * projector(kets::plus()) * u1.adjoint();
  const Mat2 gate_s = u2 * gates::s();
  const Mat2 gate_sinv = u3 * gates::s_dagger();
  Mat2 m_plus = u4 * projector(kets::plus()) * u4.adjoint();

  ChoiChannel ch_s = choi_of_unitary(gate_s);
  ChoiChannel ch_sinv = choi_of_unitary(gate_sinv);

  if (cfg.kind != NoiseKind::kUnitary) {
    const ChoiChannel noise = cfg.kind == NoiseKind::kDepolarizing
                                  ? depolarizing_channel(cfg.p)
                                  : amplitude_damping_channel(cfg.gamma);
    rho = noise.apply(rho);
    ch_s = compose(ch_s, noise);
    ch_sinv = compose(ch_sinv, noise);
    m_plus = noise.apply_adjoint(m_plus);
  }
  return QuantumModel{QubitState::from_matrix(0.5 * (rho + rho.adjoint())),
                      {{GateLabel::kS, ch_s}, {GateLabel::kSInv, ch_sinv}},
                      Povm::from_plus(0.5 * (m_plus + m_plus.adjoint()))};
}

}  // namespace qcert
