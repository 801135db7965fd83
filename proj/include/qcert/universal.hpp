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

// Exact (probability-one) verification of the universal gate set
// {s, s^-1, h, t}: every channel must be unitary and, up to one gauge unitary
// and possibly complex conjugation, equal S, S^dag, H and T or ZT.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcert/protocol.hpp"
#include "qcert/qmodel.hpp"
#include "qcert/selftest.hpp"

namespace qcert {

/// |<+|T|+>|^2; its ZT counterpart is 1 - this value. Separating the two
/// branches needs probability estimation, which the deterministic protocol
/// does not do.
inline const double kPlusOverlapT = 0.5 + 0.5 / std::numbers::sqrt2;

/// The unitary of a channel whose Choi matrix has an eigenvalue >= 1 - tol,
/// global phase fixed so the largest entry is real positive; nullopt otherwise.
inline std::optional<Mat2> extract_unitary(const ChoiChannel& ch, double tolerance = 1e-7) {
  ch.require_valid();
  Eigen::SelfAdjointEigenSolver<Mat4> solver(0.5 * (ch.matrix() + ch.matrix().adjoint()));
  if (solver.eigenvalues()(3) < 1.0 - tolerance) return std::nullopt;
  const Vec4 v = solver.eigenvectors().col(3);
  Mat2 u;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) u(a, b) = std::numbers::sqrt2 * v(pair_index(a, b));
  Eigen::Map<Eigen::Vector4cd> flat(u.data());
  fix_global_phase(flat);
  return u;
}

/// Purity of L(L(|psi><psi|)) is >= 1 - 1e-9. If so, L(|psi><psi|) is pure too.
inline bool check_purity_after_double(const ChoiChannel& ch, const Ket& psi) {
  ch.require_valid();
  const double n = psi.norm();
  if (!(n > 0)) fail(ErrorCode::kInvalidArgument, "degenerate ket");
  const Mat2 out = ch.apply(ch.apply(projector(psi / n)));
  return (out * out).trace().real() >= 1.0 - tol::kValidation;
}

enum class TBranch { kT, kZT, kUndetermined };

inline const char* to_string(TBranch b) {
  switch (b) {
    case TBranch::kT: return "T";
    case TBranch::kZT: return "ZT";
    case TBranch::kUndetermined: return "undetermined";
  }
  return "?";
}

struct UniversalReport {
  bool pass = false;
  std::vector<std::string> failing_checks;
  Mat2 gauge = Mat2::Identity();
  bool conjugated = false;
  TBranch t_branch = TBranch::kUndetermined;
  std::map<GateLabel, Mat2> unitaries;
  /// e^{i theta} with U_h = |phi><phi_perp| + e^{i theta}|phi_perp><phi| (up to phase).
  std::optional<Complex> h_phase;
  /// e^{i varphi} with U^dag U_t U = diag(1, e^{i varphi}) (after conjugation).
  std::optional<Complex> t_phase;
};

namespace detail {

inline double fidelity_pure(const ChoiChannel& ch, const Ket& in, const Ket& out) {
  return (out.adjoint() * ch.apply(projector(in)) * out)(0, 0).real();
}

inline Mat2 maybe_conj(const Mat2& m, bool conj) { return conj ? Mat2(m.conjugate()) : m; }

}  // namespace detail

inline UniversalReport verify_universal(const QuantumModel& model, double tolerance = 1e-7) {
  for (auto g : kAllGateLabels) model.channel(g).require_valid();
  model.state.require_valid();
  model.povm.require_valid();

  UniversalReport r;
  auto fail_check = [&](std::string what) { r.failing_checks.push_back(std::move(what)); };
  const double amp_tol = std::sqrt(tolerance);

  // (1) every sequence is deterministic with the target outcome
  const ProtocolSpec spec = universal_spec();
  for (const auto& e : spec.entries()) {
    const double p = sequence_probability(model, e.sequence, e.outcome);
    if (p < 1.0 - tolerance)
      fail_check("sequence " + e.sequence.display() + " gives outcome " + to_string(e.outcome) +
                 " with probability " + std::to_string(p));
  }

  for (auto g : kAllGateLabels) {
    if (auto u = extract_unitary(model.channel(g), tolerance))
      r.unitaries.emplace(g, *u);
    else
      fail_check(std::string("channel ") + to_char(g) + " is not unitary");
  }
  if (!r.failing_checks.empty()) return r;

  const Mat2& us = r.unitaries.at(GateLabel::kS);
  const Mat2& usinv = r.unitaries.at(GateLabel::kSInv);
  const Mat2& uh = r.unitaries.at(GateLabel::kH);
  const Mat2& ut = r.unitaries.at(GateLabel::kT);

  // (2) S-gate self-test at zero failure probability
  Frames f;
  try {
    f = extract_frames(model);
  } catch (const Error& e) {
    fail_check(std::string("s/s^-1 frames: ") + e.what());
    return r;
  }
  Mat2 u = gauge_unitary(f);
  if (phase_insensitive_overlap(us, u * gates::s() * u.adjoint()) < 1.0 - tolerance)
    fail_check("U_s differs from U S U^dag");
  if (phase_insensitive_overlap(usinv, u * gates::s_dagger() * u.adjoint()) < 1.0 - tolerance)
    fail_check("U_s^-1 differs from U S^dag U^dag");

  // (3) Hadamard: swaps phi and phi_perp, purity witness from hh, phase theta
  const ChoiChannel& ch_h = model.channel(GateLabel::kH);
  if (detail::fidelity_pure(ch_h, f.phi, f.phi_perp) < 1.0 - tolerance ||
      detail::fidelity_pure(ch_h, f.phi_perp, f.phi) < 1.0 - tolerance)
    fail_check("h does not exchange phi and phi_perp");
  if (!check_purity_after_double(ch_h, f.psi)) fail_check("h(h(psi)) is not pure");
  const Complex h01 = f.phi.dot(uh * f.phi_perp);
  const Complex h10 = f.phi_perp.dot(uh * f.phi);
  if (std::abs(h01) > amp_tol && std::abs(h10) > amp_tol) {
    const Complex e_theta = (h10 / std::abs(h10)) / (h01 / std::abs(h01));
    r.h_phase = e_theta;
    const double lhs = std::abs(1.0 + 2.0 * e_theta - e_theta * e_theta);
    if (std::abs(lhs - 2.0 * std::numbers::sqrt2) > amp_tol)
      fail_check("h phase violates |1 + 2e^{i theta} - e^{2i theta}| = 2 sqrt2");
  }
  const Mat2 wh = u.adjoint() * uh * u;
  if (phase_insensitive_overlap(wh, gates::h()) >= 1.0 - tolerance) {
    r.conjugated = false;
  } else if (phase_insensitive_overlap(wh, gates::x() * gates::h() * gates::x()) >=
             1.0 - tolerance) {
    r.conjugated = true;
    u = u * gates::x();
  } else {
    fail_check("gauge-rotated h is neither H nor XHX");
    return r;
  }
  r.gauge = u;

  // the gauge now maps S^(*), S^dag^(*) onto the implemented gates
  const Mat2 ws = u.adjoint() * us * u;
  if (phase_insensitive_overlap(ws, detail::maybe_conj(gates::s(), r.conjugated)) <
      1.0 - tolerance)
    fail_check("U_s is not U S^(*) U^dag after fixing the Hadamard branch");
  if (phase_insensitive_overlap(u.adjoint() * usinv * u,
                                detail::maybe_conj(gates::s_dagger(), r.conjugated)) <
      1.0 - tolerance)
    fail_check("U_s^-1 is not U S^dag(*) U^dag after fixing the Hadamard branch");
  const Ket target = u * kets::plus();
  if ((target.adjoint() * model.state.matrix() * target)(0, 0).real() < 1.0 - tolerance)
    fail_check("state is not U|+>");
  if (spectral_norm_hermitian(model.povm.m_plus() - projector(target)) > tolerance)
    fail_check("measurement is not U|+><+|U^dag");

  // (4) t: diagonal in the gauge frame with e^{2i varphi} = i
  if (!check_purity_after_double(model.channel(GateLabel::kT), f.psi))
    fail_check("t(t(psi)) is not pure");
  const Mat2 wt = detail::maybe_conj(u.adjoint() * ut * u, r.conjugated);
  if (std::norm(wt(0, 0)) < 1.0 - tolerance) {
    fail_check("gauge-rotated t is not diagonal");
  } else {
    const Complex e_phi = (wt(1, 1) / std::abs(wt(1, 1))) / (wt(0, 0) / std::abs(wt(0, 0)));
    r.t_phase = e_phi;
    if (std::abs(e_phi * e_phi - kI) > amp_tol) {
      fail_check("t phase violates e^{2i varphi} = i");
    } else {
      r.t_branch = e_phi.real() > 0 ? TBranch::kT : TBranch::kZT;
      const Mat2 expected = r.t_branch == TBranch::kT ? gates::t() : gates::zt();
      if (phase_insensitive_overlap(wt, expected) < 1.0 - tolerance) {
        r.t_branch = TBranch::kUndetermined;
        fail_check("gauge-rotated t matches neither T nor ZT");
      }
    }
  }

  r.pass = r.failing_checks.empty() && r.t_branch != TBranch::kUndetermined;
  return r;
}

namespace models {

/// Target universal model with t implemented as ZT.
inline QuantumModel universal_zt() { return target_universal(gates::zt()); }

/// Entry-wise complex conjugate of the target universal model.
inline QuantumModel universal_conjugated() { return complex_conjugate(target_universal()); }

/// Conjugated target rotated by X: h is realized as XHX in the S-test gauge.
inline QuantumModel universal_xhx() { return conjugate_by(universal_conjugated(), gates::x()); }

}  // namespace models

}  // namespace qcert
