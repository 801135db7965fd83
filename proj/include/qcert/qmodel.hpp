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

// States, channels (Choi form), binary POVMs and quantum models of a single
// qubit, with the arithmetic the certification routines are built on.
//
// Choi convention: choi = 1/2 sum_ij L(|i><j|) (x) |i><j|, first tensor factor
// is the channel output, second the input. Basis order |00>,|01>,|10>,|11>.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcert/error.hpp"
#include "qcert/linalg.hpp"

namespace qcert {

// ---------------------------------------------------------------------------
// Labels and outcomes

enum class GateLabel { kS, kSInv, kH, kT };

inline constexpr std::array<GateLabel, 4> kAllGateLabels = {
    GateLabel::kS, GateLabel::kSInv, GateLabel::kH, GateLabel::kT};

/// Single-character wire form: s, S (= s^-1), h, t.
constexpr char to_char(GateLabel g) {
  switch (g) {
    case GateLabel::kS: return 's';
    case GateLabel::kSInv: return 'S';
    case GateLabel::kH: return 'h';
    case GateLabel::kT: return 't';
  }
  return '?';
}

inline GateLabel gate_label_from_char(char c) {
  switch (c) {
    case 's': return GateLabel::kS;
    case 'S': return GateLabel::kSInv;
    case 'h': return GateLabel::kH;
    case 't': return GateLabel::kT;
    default: fail(ErrorCode::kParse, std::string("unknown gate label '") + c + "'");
  }
}

enum class Outcome { kPlus, kMinus };

constexpr const char* to_string(Outcome o) { return o == Outcome::kPlus ? "+" : "-"; }

inline Outcome outcome_from_string(std::string_view s) {
  if (s == "+") return Outcome::kPlus;
  if (s == "-" || s == "−") return Outcome::kMinus;
  fail(ErrorCode::kParse, "unknown outcome '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Invariant checks

struct Diagnostic {
  std::string component;  // e.g. "state", "channel s", "povm m_minus"
  std::string invariant;  // e.g. "psd", "trace", "trace-preserving"
  double magnitude = 0;   // size of the violation
};

namespace detail {

inline void check(std::vector<Diagnostic>& out, const std::string& component,
                  const char* invariant, double magnitude, double tolerance) {
  if (!(magnitude <= tolerance)) out.push_back({component, invariant, magnitude});
}

inline void check_psd2(std::vector<Diagnostic>& out, const std::string& component,
                       const Mat2& m, double tolerance) {
  const double herm = hermiticity_defect(m);
  check(out, component, "hermitian", herm, tolerance);
  const double lo = eig_hermitian(m).values[0];
  check(out, component, "psd", std::max(0.0, -lo), tolerance);
}

}  // namespace detail

inline std::vector<Diagnostic> check_state(const Mat2& m, const std::string& component = "state",
                                           double tolerance = tol::kValidation) {
  std::vector<Diagnostic> out;
  detail::check_psd2(out, component, m, tolerance);
  detail::check(out, component, "trace", std::abs(m.trace() - 1.0), tolerance);
  return out;
}

inline std::vector<Diagnostic> check_choi(const Mat4& m, const std::string& component = "channel",
                                          double tolerance = tol::kValidation) {
  std::vector<Diagnostic> out;
  detail::check(out, component, "hermitian", hermiticity_defect(m), tolerance);
  const double lo = eigenvalues_hermitian(m)(0);
  detail::check(out, component, "psd", std::max(0.0, -lo), tolerance);
  detail::check(out, component, "trace", std::abs(m.trace() - 1.0), tolerance);
  detail::check(out, component, "trace-preserving",
                max_abs(trace_first(m) - 0.5 * Mat2::Identity()), tolerance);
  return out;
}

inline std::vector<Diagnostic> check_povm(const Mat2& plus, const Mat2& minus,
                                          const std::string& component = "povm",
                                          double tolerance = tol::kValidation) {
  std::vector<Diagnostic> out;
  detail::check_psd2(out, component + " m_plus", plus, tolerance);
  detail::check_psd2(out, component + " m_minus", minus, tolerance);
  detail::check(out, component, "completeness", max_abs(plus + minus - Mat2::Identity()),
                tolerance);
  return out;
}

inline std::string describe(const std::vector<Diagnostic>& diags) {
  std::string s;
  for (const auto& d : diags) {
    if (!s.empty()) s += "; ";
    s += d.component + ": " + d.invariant + " violated by " + std::to_string(d.magnitude);
  }
  return s;
}

namespace detail {
inline void throw_if(const std::vector<Diagnostic>& diags) {
  if (!diags.empty()) fail(ErrorCode::kValidation, describe(diags));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Value types. `from_*` factories validate; `unchecked` keeps raw data so
// that `validate` can report on it. Operations re-check unchecked inputs.

class QubitState {
 public:
  static QubitState from_matrix(const Mat2& m) {
    detail::throw_if(check_state(m));
    return QubitState(m, true);
  }
  static QubitState unchecked(const Mat2& m) { return QubitState(m, false); }

  const Mat2& matrix() const { return mat_; }
  bool checked() const { return checked_; }
  void require_valid() const {
    if (!checked_) detail::throw_if(check_state(mat_));
  }

 private:
  QubitState(const Mat2& m, bool checked) : mat_(m), checked_(checked) {}
  Mat2 mat_;
  bool checked_;
};

class ChoiChannel {
 public:
  static ChoiChannel from_matrix(const Mat4& m) {
    detail::throw_if(check_choi(m));
    return ChoiChannel(m, true);
  }
  static ChoiChannel unchecked(const Mat4& m) { return ChoiChannel(m, false); }

  /// Builds the Choi matrix of a linear map given by its action on |b><b'|.
  template <typename Map>
  static ChoiChannel from_action(Map&& action, bool validate = true) {
    Mat4 c;
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        Mat2 e = Mat2::Zero();
        e(b, bp) = 1.0;
        const Mat2 img = action(e);
        for (int a = 0; a < 2; ++a)
          for (int ap = 0; ap < 2; ++ap)
            c(pair_index(a, b), pair_index(ap, bp)) = 0.5 * img(a, ap);
      }
    return validate ? from_matrix(c) : unchecked(c);
  }

  const Mat4& matrix() const { return choi_; }
  bool checked() const { return checked_; }
  void require_valid() const {
    if (!checked_) detail::throw_if(check_choi(choi_));
  }

  /// L(x) = 2 Tr_in[(1 (x) x^T) choi] for an arbitrary operator x.
  Mat2 apply(const Mat2& x) const {
    Mat2 out = Mat2::Zero();
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b)
          for (int bp = 0; bp < 2; ++bp)
            out(a, ap) += choi_(pair_index(a, b), pair_index(ap, bp)) * x(b, bp);
    return 2.0 * out;
  }

  /// L^dag(e) = 2 (Tr_out[(e (x) 1) choi])^T.
  Mat2 apply_adjoint(const Mat2& e) const {
    Mat2 out = Mat2::Zero();
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        for (int a = 0; a < 2; ++a)
          for (int ap = 0; ap < 2; ++ap)
            out(bp, b) += e(ap, a) * choi_(pair_index(a, b), pair_index(ap, bp));
    return 2.0 * out;
  }

 private:
  ChoiChannel(const Mat4& m, bool checked) : choi_(m), checked_(checked) {}
  Mat4 choi_;
  bool checked_;
};

class Povm {
 public:
  static Povm from_effects(const Mat2& plus, const Mat2& minus) {
    detail::throw_if(check_povm(plus, minus));
    return Povm(plus, minus, true);
  }
  /// M- = 1 - M+.
  static Povm from_plus(const Mat2& plus) {
    return from_effects(plus, Mat2::Identity() - plus);
  }
  static Povm unchecked(const Mat2& plus, const Mat2& minus) {
    return Povm(plus, minus, false);
  }

  const Mat2& m_plus() const { return plus_; }
  const Mat2& m_minus() const { return minus_; }
  const Mat2& effect(Outcome o) const { return o == Outcome::kPlus ? plus_ : minus_; }
  bool checked() const { return checked_; }
  void require_valid() const {
    if (!checked_) detail::throw_if(check_povm(plus_, minus_));
  }

 private:
  Povm(const Mat2& p, const Mat2& m, bool checked) : plus_(p), minus_(m), checked_(checked) {}
  Mat2 plus_;
  Mat2 minus_;
  bool checked_;
};

struct QuantumModel {
  QubitState state;
  std::map<GateLabel, ChoiChannel> channels;
  Povm povm;

  const ChoiChannel& channel(GateLabel g) const {
    auto it = channels.find(g);
    if (it == channels.end())
      fail(ErrorCode::kInvalidArgument,
           std::string("model has no channel for label '") + to_char(g) + "'");
    return it->second;
  }

  bool has(GateLabel g) const { return channels.count(g) != 0; }
};

// ---------------------------------------------------------------------------
// Operations

inline QubitState state_from_ket(const Ket& v) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n)) fail(ErrorCode::kInvalidArgument, "degenerate ket");
  const Ket u = v / n;
  return QubitState::from_matrix(projector(u));
}

/// Unit Choi vector (1/sqrt2) sum_b U|b> (x) |b> of a unitary channel.
inline Vec4 choi_vector(const Mat2& u) {
  Vec4 c;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) c(pair_index(a, b)) = u(a, b) / std::numbers::sqrt2;
  return c;
}

inline ChoiChannel choi_of_unitary(const Mat2& u) {
  if (!is_unitary(u)) fail(ErrorCode::kInvalidArgument, "not unitary");
  const Vec4 c = choi_vector(u);
  return ChoiChannel::from_matrix(c * c.adjoint());
}

inline QubitState apply_channel(const ChoiChannel& ch, const QubitState& rho) {
  ch.require_valid();
  rho.require_valid();
  return QubitState::from_matrix(ch.apply(rho.matrix()));
}

inline Mat2 adjoint_apply(const ChoiChannel& ch, const Mat2& effect) {
  ch.require_valid();
  if (hermiticity_defect(effect) > tol::kValidation)
    fail(ErrorCode::kValidation, "effect is not Hermitian");
  return ch.apply_adjoint(effect);
}

/// Choi matrix of `second` after `first`.
inline ChoiChannel compose(const ChoiChannel& first, const ChoiChannel& second) {
  first.require_valid();
  second.require_valid();
  return ChoiChannel::from_action(
      [&](const Mat2& x) { return second.apply(first.apply(x)); });
}

/// Tr[choi(ch) choi(U)] (entanglement fidelity with the unitary channel U).
inline double choi_overlap(const ChoiChannel& ch, const Mat2& target_unitary) {
  if (!is_unitary(target_unitary)) fail(ErrorCode::kInvalidArgument, "not unitary");
  const Vec4 c = choi_vector(target_unitary);
  return (c.adjoint() * ch.matrix() * c)(0, 0).real();
}

inline double avg_gate_fidelity(const ChoiChannel& ch, const Mat2& target_unitary) {
  ch.require_valid();
  return 2.0 / 3.0 * choi_overlap(ch, target_unitary) + 1.0 / 3.0;
}

/// Upper bound 2 sqrt6 sqrt(1 - F_avg) on the diamond distance to a unitary.
inline double diamond_bound(double favg) {
  if (!(favg >= 0.0 && favg <= 1.0))
    fail(ErrorCode::kInvalidArgument, "average gate fidelity outside [0, 1]");
  return 2.0 * std::sqrt(6.0) * std::sqrt(1.0 - favg);
}

inline std::vector<Diagnostic> validate(const QuantumModel& model) {
  std::vector<Diagnostic> out = check_state(model.state.matrix());
  for (const auto& [label, ch] : model.channels) {
    auto d = check_choi(ch.matrix(), std::string("channel ") + to_char(label));
    out.insert(out.end(), d.begin(), d.end());
  }
  auto d = check_povm(model.povm.m_plus(), model.povm.m_minus());
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

inline void require_valid(const QuantumModel& model) { detail::throw_if(validate(model)); }

// ---------------------------------------------------------------------------
// Whole-model transformations

namespace detail {

// Rebuilds a model from transformed matrices, validating exactly the
// components whose source was validated.
template <typename StateFn, typename ChoiFn, typename EffectFn>
QuantumModel transform_model(const QuantumModel& m, StateFn state_fn, ChoiFn choi_fn,
                             EffectFn effect_fn) {
  const Mat2 rho = state_fn(m.state.matrix());
  const Mat2 plus = effect_fn(m.povm.m_plus());
  const Mat2 minus = effect_fn(m.povm.m_minus());
  QuantumModel out{
      m.state.checked() ? QubitState::from_matrix(rho) : QubitState::unchecked(rho),
      {},
      m.povm.checked() ? Povm::from_effects(plus, minus) : Povm::unchecked(plus, minus)};
  for (const auto& [label, ch] : m.channels) {
    const Mat4 c = choi_fn(ch.matrix());
    out.channels.emplace(label,
                         ch.checked() ? ChoiChannel::from_matrix(c) : ChoiChannel::unchecked(c));
  }
  return out;
}

}  // namespace detail

/// Model with every component conjugated by the unitary V:
/// rho -> V rho V^dag, L -> V L(V^dag . V) V^dag, M -> V M V^dag.
inline QuantumModel conjugate_by(const QuantumModel& m, const Mat2& v) {
  if (!is_unitary(v)) fail(ErrorCode::kInvalidArgument, "not unitary");
  const Mat4 w = kron(v, v.conjugate());
  return detail::transform_model(
      m, [&](const Mat2& x) -> Mat2 { return v * x * v.adjoint(); },
      [&](const Mat4& c) -> Mat4 { return w * c * w.adjoint(); },
      [&](const Mat2& x) -> Mat2 { return v * x * v.adjoint(); });
}

/// Entry-wise complex conjugate (computational basis) of every component.
inline QuantumModel complex_conjugate(const QuantumModel& m) {
  return detail::transform_model(
      m, [](const Mat2& x) -> Mat2 { return x.conjugate(); },
      [](const Mat4& c) -> Mat4 { return c.conjugate(); },
      [](const Mat2& x) -> Mat2 { return x.conjugate(); });
}

namespace models {

/// (|+><+|, {S, S^dag}, (|+><+|, |-><-|)).
inline QuantumModel target_s_gate() {
  return QuantumModel{
      QubitState::from_matrix(projector(kets::plus())),
      {{GateLabel::kS, choi_of_unitary(gates::s())},
       {GateLabel::kSInv, choi_of_unitary(gates::s_dagger())}},
      Povm::from_plus(projector(kets::plus()))};
}

/// Target S model extended with h -> H and t -> `t_gate` (T by default).
inline QuantumModel target_universal(const Mat2& t_gate = gates::t()) {
  QuantumModel m = target_s_gate();
  m.channels.emplace(GateLabel::kH, choi_of_unitary(gates::h()));
  m.channels.emplace(GateLabel::kT, choi_of_unitary(t_gate));
  return m;
}

}  // namespace models

}  // namespace qcert
