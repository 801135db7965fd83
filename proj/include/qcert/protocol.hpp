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

// Sequence sets with deterministic target outcomes, the exact single-round
// pass probability of a model, simulated protocol runs and repetition counts.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcert/error.hpp"
#include "qcert/qmodel.hpp"
#include "qcert/rng.hpp"

namespace qcert {

/// Gate labels applied left to right: "sSh" applies s first.
struct Sequence {
  std::vector<GateLabel> labels;

  static Sequence parse(std::string_view text) {
    Sequence s;
    for (char c : text) s.labels.push_back(gate_label_from_char(c));
    return s;
  }

  std::string str() const {
    std::string out;
    for (auto g : labels) out += to_char(g);
    return out;
  }

  /// Printable form; the empty sequence is shown as "ε".
  std::string display() const { return labels.empty() ? "ε" : str(); }

  auto operator<=>(const Sequence&) const = default;
};

struct SpecEntry {
  Sequence sequence;
  Outcome outcome = Outcome::kPlus;
  double mass = 0;
};

class ProtocolSpec {
 public:
  /// Validates: nonempty, strictly positive masses summing to 1 +- 1e-12, and
  /// no repeated sequence.
  explicit ProtocolSpec(std::vector<SpecEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) fail(ErrorCode::kInvalidArgument, "protocol spec has no sequences");
    double total = 0;
    std::set<Sequence> seen;
    for (const auto& e : entries_) {
      if (!(e.mass > 0) || !std::isfinite(e.mass))
        fail(ErrorCode::kInvalidArgument,
             "sampling mass of '" + e.sequence.display() + "' must be > 0");
      if (!seen.insert(e.sequence).second)
        fail(ErrorCode::kInvalidArgument, "duplicate sequence '" + e.sequence.display() + "'");
      total += e.mass;
    }
    if (std::abs(total - 1.0) > 1e-12)
      fail(ErrorCode::kInvalidArgument,
           "sampling masses sum to " + std::to_string(total) + ", expected 1");
  }

  const std::vector<SpecEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::optional<Outcome> outcome(const Sequence& s) const {
    for (const auto& e : entries_)
      if (e.sequence == s) return e.outcome;
    return std::nullopt;
  }

  std::optional<double> mass(const Sequence& s) const {
    for (const auto& e : entries_)
      if (e.sequence == s) return e.mass;
    return std::nullopt;
  }

  std::set<GateLabel> labels_used() const {
    std::set<GateLabel> out;
    for (const auto& e : entries_) out.insert(e.sequence.labels.begin(), e.sequence.labels.end());
    return out;
  }

  /// Same sequences and outcomes with new masses (validated).
  ProtocolSpec with_masses(const std::vector<double>& masses) const {
    if (masses.size() != entries_.size())
      fail(ErrorCode::kInvalidArgument, "mass vector length does not match the sequence set");
    auto e = entries_;
    for (std::size_t k = 0; k < e.size(); ++k) e[k].mass = masses[k];
    return ProtocolSpec(std::move(e));
  }

 private:
  std::vector<SpecEntry> entries_;
};

namespace detail {
inline ProtocolSpec uniform_spec(
    std::initializer_list<std::pair<const char*, Outcome>> table) {
  std::vector<SpecEntry> entries;
  const double mass = 1.0 / static_cast<double>(table.size());
  for (const auto& [seq, outcome] : table) entries.push_back({Sequence::parse(seq), outcome, mass});
  return ProtocolSpec(std::move(entries));
}
}  // namespace detail

/// {ε, ss, sS, Ss, SS}, uniform; "+" for ε, sS, Ss and "-" for ss, SS.
inline ProtocolSpec s_gate_spec() {
  constexpr auto P = Outcome::kPlus;
  constexpr auto M = Outcome::kMinus;
  return detail::uniform_spec({{"", P}, {"ss", M}, {"sS", P}, {"Ss", P}, {"SS", M}});
}

/// The twelve-sequence set for {s, s^-1, h, t}, uniform.
inline ProtocolSpec universal_spec() {
  constexpr auto P = Outcome::kPlus;
  constexpr auto M = Outcome::kMinus;
  return detail::uniform_spec({{"", P},
                               {"sS", P},
                               {"Ss", P},
                               {"ss", M},
                               {"SS", M},
                               {"shs", P},
                               {"Shs", M},
                               {"hh", P},
                               {"hsh", P},
                               {"hth", P},
                               {"sshth", M},
                               {"tts", M}});
}

/// Tr[M_a L_xm o ... o L_x1(rho)], without range clamping.
inline double sequence_probability(const QuantumModel& model, const Sequence& seq, Outcome a) {
  Mat2 rho = model.state.matrix();
  for (auto g : seq.labels) rho = model.channel(g).apply(rho);
  return (model.povm.effect(a) * rho).trace().real();
}

namespace detail {
inline void require_covers(const QuantumModel& model, const ProtocolSpec& spec) {
  for (auto g : spec.labels_used()) model.channel(g).require_valid();
  model.state.require_valid();
  model.povm.require_valid();
}
}  // namespace detail

/// Probability that one round of the protocol passes: sum_x mu(x) Pr[a_x | x].
inline double pass_probability(const QuantumModel& model, const ProtocolSpec& spec) {
  detail::require_covers(model, spec);
  double p = 0;
  for (const auto& e : spec.entries()) p += e.mass * sequence_probability(model, e.sequence, e.outcome);
  return p;
}

enum class Verdict { kAccept, kReject };

struct RunResult {
  Verdict verdict = Verdict::kAccept;
  std::uint64_t repetitions_executed = 0;
  std::optional<Sequence> failing_sequence;
  std::optional<Outcome> observed_outcome;
};

/// Simulates n rounds against models drawn per round from `model_for(i)`
/// (independent, possibly non-identical rounds). Round i consumes draws of
/// the counter stream (seed, i) only.
template <typename ModelFor>
RunResult run_protocol_with(ModelFor&& model_for, const ProtocolSpec& spec, std::uint64_t n,
                            std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "number of repetitions must be >= 1");
  const auto& entries = spec.entries();
  std::vector<double> cumulative(entries.size());
  double acc = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) cumulative[k] = (acc += entries[k].mass);

  RunResult result;
  for (std::uint64_t i = 0; i < n; ++i) {
    const QuantumModel& model = model_for(i);
    CounterRng rng(seed, i);
    const double u = rng.uniform() * acc;
    const std::size_t k = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                     cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(entries.size()) - 1));
    const auto& e = entries[k];
    const double p =
        std::clamp(sequence_probability(model, e.sequence, e.outcome), 0.0, 1.0);
    result.repetitions_executed = i + 1;
    if (!(rng.uniform() < p)) {
      result.verdict = Verdict::kReject;
      result.failing_sequence = e.sequence;
      result.observed_outcome =
          e.outcome == Outcome::kPlus ? Outcome::kMinus : Outcome::kPlus;
      return result;
    }
  }
  return result;
}

/// n i.i.d. rounds of one fixed model.
inline RunResult run_protocol(const QuantumModel& model, const ProtocolSpec& spec,
                              std::uint64_t n, std::uint64_t seed) {
  detail::require_covers(model, spec);
  return run_protocol_with([&](std::uint64_t) -> const QuantumModel& { return model; }, spec, n,
                           seed);
}

/// Number of rounds that bounds the acceptance probability of a model by
/// delta. Without `slope`, eps is the per-round failure probability and the
/// result is ceil(ln(1/delta) / ln(1/(1-eps))). With slope c, eps is the
/// target model distance and the result is ceil(c/eps * ln(1/delta)).
inline std::uint64_t sample_complexity(double eps, double delta,
                                       std::optional<double> slope = std::nullopt) {
  if (!(eps > 0 && eps < 1)) fail(ErrorCode::kInvalidArgument, "eps must lie in (0, 1)");
  if (!(delta > 0 && delta < 1)) fail(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  double n;
  if (slope) {
    if (!(*slope > 0) || !std::isfinite(*slope))
      fail(ErrorCode::kInvalidArgument, "slope constant must be > 0");
    n = *slope / eps * std::log(1.0 / delta);
  } else {
    n = std::log(1.0 / delta) / -std::log1p(-eps);
  }
  return static_cast<std::uint64_t>(std::ceil(n));
}

}  // namespace qcert
