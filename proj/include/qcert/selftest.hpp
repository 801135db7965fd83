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

// Constructive gauge extraction for the S-gate test: from a model's
// measurement and its s / s^-1 channels, build the frames {psi, psi_perp},
// {phi, phi_perp} and the gauge unitary U = |psi><+| - i|psi_perp><-|, then
// measure how far the model is from the gauge-rotated target.

#include <algorithm>

#include "qcert/error.hpp"
#include "qcert/protocol.hpp"
#include "qcert/qmodel.hpp"

namespace qcert {

struct Frames {
  Ket psi;        // dominant eigenvector of M+
  Ket psi_perp;
  Ket phi;        // eigenvector of Delta with the larger eigenvalue
  Ket phi_perp;
  double lambda_plus = 0;   // M+ = (1 - lambda_plus) psi + lambda_minus psi_perp
  double lambda_minus = 0;
  double eta_plus = 0;      // Delta = eta_plus phi - eta_minus phi_perp
  double eta_minus = 0;
};

namespace selftest_limits {
/// Minimum eigenvalue gap of M+ (and of Delta) for the frame to be defined.
inline constexpr double kMinGap = 1e-6;
/// Minimum |<psi|phi>| and |<psi_perp|phi>|.
inline constexpr double kMinOverlap = 1e-6;
/// Largest tolerated residual of the phase convention after adjustment.
inline constexpr double kPhaseResidual = 1e-9;
}  // namespace selftest_limits

namespace detail {
inline Complex unit_phase(Complex z) { return z / std::abs(z); }
}  // namespace detail

/// Extracts measurement and channel frames. Phases satisfy
///   <psi|phi> = <psi_perp|phi_perp> = |<psi|phi>|,
///   -<psi|phi_perp> = <psi_perp|phi> = |<psi_perp|phi>|.
inline Frames extract_frames(const QuantumModel& model) {
  const ChoiChannel& ch_s = model.channel(GateLabel::kS);
  const ChoiChannel& ch_sinv = model.channel(GateLabel::kSInv);
  ch_s.require_valid();
  ch_sinv.require_valid();
  model.povm.require_valid();

  Frames f;
  const auto meas = eig_hermitian(model.povm.m_plus());
  if (meas.values[1] - meas.values[0] < selftest_limits::kMinGap)
    fail(ErrorCode::kDegenerate, "gauge-undefined measurement");
  f.psi = meas.vectors[1];
  f.psi_perp = meas.vectors[0];
  f.lambda_plus = 1.0 - meas.values[1];
  f.lambda_minus = meas.values[0];

  const Mat2 psi_proj = projector(f.psi);
  const Mat2 delta = ch_s.apply_adjoint(psi_proj) - ch_sinv.apply_adjoint(psi_proj);
  const auto de = eig_hermitian(delta);
  if (de.values[1] - de.values[0] < selftest_limits::kMinGap)
    fail(ErrorCode::kDegenerate, "gauge-undefined channel pair");
  f.phi = de.vectors[1];
  f.phi_perp = de.vectors[0];
  f.eta_plus = de.values[1];
  f.eta_minus = -de.values[0];

  const Complex psi_phi = f.psi.dot(f.phi);
  const Complex perp_phi = f.psi_perp.dot(f.phi);
  if (std::abs(psi_phi) < selftest_limits::kMinOverlap ||
      std::abs(perp_phi) < selftest_limits::kMinOverlap)
    fail(ErrorCode::kDegenerate, "degenerate frame overlap");

  f.phi *= std::conj(detail::unit_phase(psi_phi));
  f.psi_perp *= detail::unit_phase(f.psi_perp.dot(f.phi));
  f.phi_perp *= std::conj(detail::unit_phase(f.psi_perp.dot(f.phi_perp)));

  const Complex a = f.psi.dot(f.phi);
  const Complex b = f.psi_perp.dot(f.phi);
  const Complex c = f.psi_perp.dot(f.phi_perp);
  const Complex d = f.psi.dot(f.phi_perp);
  const double residual =
      std::max({std::abs(a.imag()), std::abs(b.imag()), std::abs(c - a), std::abs(d + b)});
  if (residual > selftest_limits::kPhaseResidual)
    fail(ErrorCode::kDegenerate, "frame phase convention could not be enforced");
  return f;
}

/// U = |psi><+| - i |psi_perp><-|, so U|+> = psi and U|-> = -i psi_perp.
inline Mat2 gauge_unitary(const Frames& f) {
  return f.psi * kets::plus().adjoint() - kI * f.psi_perp * kets::minus().adjoint();
}

struct GaugeReport {
  Mat2 gauge = Mat2::Identity();
  double favg_s = 0;
  double favg_sinv = 0;
  double state_fidelity = 0;
  double meas_spectral_distance = 0;
  double model_distance = 0;
  double epsilon_fail = 0;

  double infid_s() const { return 1.0 - favg_s; }
  double infid_sinv() const { return 1.0 - favg_sinv; }
  double state_distance() const { return 1.0 - state_fidelity; }
};

namespace detail {
inline void require_s_gate_subspec(const ProtocolSpec& spec) {
  const ProtocolSpec reference = s_gate_spec();
  for (const auto& e : spec.entries()) {
    const auto expected = reference.outcome(e.sequence);
    if (!expected || *expected != e.outcome)
      fail(ErrorCode::kInvalidArgument,
           "certify needs the S-gate sequence set; '" + e.sequence.display() +
               "' is not part of it");
  }
}

inline double unit_clamp(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace detail

/// Distances of `model` to the target S model rotated by the extracted gauge.
inline GaugeReport certify(const QuantumModel& model, const ProtocolSpec& spec,
                           const Frames& frames) {
  detail::require_s_gate_subspec(spec);
  using detail::unit_clamp;
  GaugeReport r;
  r.gauge = gauge_unitary(frames);
  const Mat2& u = r.gauge;
  r.favg_s = unit_clamp(avg_gate_fidelity(model.channel(GateLabel::kS), u * gates::s() * u.adjoint()));
  r.favg_sinv = unit_clamp(
      avg_gate_fidelity(model.channel(GateLabel::kSInv), u * gates::s_dagger() * u.adjoint()));
  const Ket target = u * kets::plus();
  r.state_fidelity =
      unit_clamp((target.adjoint() * model.state.matrix() * target)(0, 0).real());
  r.meas_spectral_distance =
      unit_clamp(spectral_norm_hermitian(model.povm.m_plus() - projector(target)));
  r.model_distance = std::max({r.infid_s(), r.infid_sinv(), r.state_distance(),
                               r.meas_spectral_distance});
  r.epsilon_fail = unit_clamp(1.0 - pass_probability(model, spec));
  return r;
}

inline GaugeReport certify(const QuantumModel& model, const ProtocolSpec& spec) {
  return certify(model, spec, extract_frames(model));
}

}  // namespace qcert
