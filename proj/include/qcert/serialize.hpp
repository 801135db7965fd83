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

// JSON wire formats. A complex number is [re, im]; matrices are row-major
// arrays of rows. Model: {"state", "channels": {label: choi_4x4}, "povm":
// {"m_plus", "m_minus"}}. Protocol spec: {"sequences": ["", "ss", ...],
// "outcomes": ["+", "-", ...], "mu": [...]} over the alphabet s, S (= s^-1),
// h, t.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qcert/error.hpp"
#include "qcert/protocol.hpp"
#include "qcert/qmodel.hpp"
#include "qcert/randmodels.hpp"
#include "qcert/selftest.hpp"
#include "qcert/universal.hpp"

namespace qcert {

using Json = nlohmann::json;

namespace detail {

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(ErrorCode::kParse, std::string(what) + ": expected a number");
  return j.get<double>();
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::kParse, "complex number must be [re, im]");
  return {number(j[0], "complex re"), number(j[1], "complex im")};
}

template <int N>
Eigen::Matrix<Complex, N, N> matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != N)
    fail(ErrorCode::kParse, std::string(what) + ": expected " + std::to_string(N) + " rows");
  Eigen::Matrix<Complex, N, N> m;
  for (int r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != N)
      fail(ErrorCode::kParse,
           std::string(what) + ": expected " + std::to_string(N) + " entries per row");
    for (int c = 0; c < N; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

template <typename Derived>
Json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorCode::kParse, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

// ---- model ---------------------------------------------------------------

inline Json model_to_json(const QuantumModel& m) {
  Json channels = Json::object();
  for (const auto& [label, ch] : m.channels)
    channels[std::string(1, to_char(label))] = detail::matrix_to_json(ch.matrix());
  return Json{{"state", detail::matrix_to_json(m.state.matrix())},
              {"channels", channels},
              {"povm",
               {{"m_plus", detail::matrix_to_json(m.povm.m_plus())},
                {"m_minus", detail::matrix_to_json(m.povm.m_minus())}}}};
}

/// Parses without validating invariants; run `validate` on the result.
inline QuantumModel model_from_json(const Json& j) {
  const Json& povm = detail::field(j, "povm");
  QuantumModel m{
      QubitState::unchecked(detail::matrix_from_json<2>(detail::field(j, "state"), "state")),
      {},
      Povm::unchecked(detail::matrix_from_json<2>(detail::field(povm, "m_plus"), "m_plus"),
                      detail::matrix_from_json<2>(detail::field(povm, "m_minus"), "m_minus"))};
  const Json& channels = detail::field(j, "channels");
  if (!channels.is_object()) fail(ErrorCode::kParse, "'channels' must be an object");
  for (const auto& [key, value] : channels.items()) {
    if (key.size() != 1) fail(ErrorCode::kParse, "channel label must be one character");
    m.channels.emplace(gate_label_from_char(key[0]),
                       ChoiChannel::unchecked(detail::matrix_from_json<4>(value, "channel")));
  }
  return m;
}

// ---- protocol spec ----------------------------------------------------------

inline Json spec_to_json(const ProtocolSpec& s) {
  Json seqs = Json::array(), outs = Json::array(), mu = Json::array();
  for (const auto& e : s.entries()) {
    seqs.push_back(e.sequence.str());
    outs.push_back(to_string(e.outcome));
    mu.push_back(e.mass);
  }
  return Json{{"sequences", seqs}, {"outcomes", outs}, {"mu", mu}};
}

inline ProtocolSpec spec_from_json(const Json& j) {
  const Json& seqs = detail::field(j, "sequences");
  const Json& outs = detail::field(j, "outcomes");
  const Json& mu = detail::field(j, "mu");
  if (!seqs.is_array() || !outs.is_array() || !mu.is_array() || seqs.size() != outs.size() ||
      seqs.size() != mu.size())
    fail(ErrorCode::kParse, "sequences, outcomes and mu must be arrays of equal length");
  std::vector<SpecEntry> entries;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    if (!seqs[k].is_string() || !outs[k].is_string())
      fail(ErrorCode::kParse, "sequences and outcomes must be strings");
    entries.push_back({Sequence::parse(seqs[k].get<std::string>()),
                       outcome_from_string(outs[k].get<std::string>()),
                       detail::number(mu[k], "mu")});
  }
  return ProtocolSpec(std::move(entries));
}

// ---- reports ------------------------------------------------------------------

inline Json to_json(const GaugeReport& r) {
  return Json{{"gauge", detail::matrix_to_json(r.gauge)},
              {"favg_s", r.favg_s},
              {"favg_sinv", r.favg_sinv},
              {"state_fidelity", r.state_fidelity},
              {"meas_spectral_distance", r.meas_spectral_distance},
              {"model_distance", r.model_distance},
              {"epsilon_fail", r.epsilon_fail}};
}

inline GaugeReport gauge_report_from_json(const Json& j) {
  GaugeReport r;
  r.gauge = detail::matrix_from_json<2>(detail::field(j, "gauge"), "gauge");
  r.favg_s = detail::number(detail::field(j, "favg_s"), "favg_s");
  r.favg_sinv = detail::number(detail::field(j, "favg_sinv"), "favg_sinv");
  r.state_fidelity = detail::number(detail::field(j, "state_fidelity"), "state_fidelity");
  r.meas_spectral_distance =
      detail::number(detail::field(j, "meas_spectral_distance"), "meas_spectral_distance");
  r.model_distance = detail::number(detail::field(j, "model_distance"), "model_distance");
  r.epsilon_fail = detail::number(detail::field(j, "epsilon_fail"), "epsilon_fail");
  return r;
}

inline Json to_json(const RunResult& r) {
  return Json{{"verdict", r.verdict == Verdict::kAccept ? "accept" : "reject"},
              {"repetitions_executed", r.repetitions_executed},
              {"failing_sequence",
               r.failing_sequence ? Json(r.failing_sequence->str()) : Json(nullptr)},
              {"observed_outcome",
               r.observed_outcome ? Json(to_string(*r.observed_outcome)) : Json(nullptr)}};
}

inline RunResult run_result_from_json(const Json& j) {
  RunResult r;
  const std::string verdict = detail::field(j, "verdict").get<std::string>();
  if (verdict != "accept" && verdict != "reject")
    fail(ErrorCode::kParse, "verdict must be accept or reject");
  r.verdict = verdict == "accept" ? Verdict::kAccept : Verdict::kReject;
  r.repetitions_executed = detail::field(j, "repetitions_executed").get<std::uint64_t>();
  const Json& fs = detail::field(j, "failing_sequence");
  if (!fs.is_null()) r.failing_sequence = Sequence::parse(fs.get<std::string>());
  const Json& oo = detail::field(j, "observed_outcome");
  if (!oo.is_null()) r.observed_outcome = outcome_from_string(oo.get<std::string>());
  return r;
}

inline Json to_json(const UniversalReport& r) {
  Json unitaries = Json::object();
  for (const auto& [label, u] : r.unitaries)
    unitaries[std::string(1, to_char(label))] = detail::matrix_to_json(u);
  auto phase = [](const std::optional<Complex>& z) {
    return z ? Json::array({z->real(), z->imag()}) : Json(nullptr);
  };
  return Json{{"verdict", r.pass ? "pass" : "fail"},
              {"failing_checks", r.failing_checks},
              {"gauge", detail::matrix_to_json(r.gauge)},
              {"conjugated", r.conjugated},
              {"t_branch", to_string(r.t_branch)},
              {"unitaries", unitaries},
              {"h_phase", phase(r.h_phase)},
              {"t_phase", phase(r.t_phase)}};
}

inline UniversalReport universal_report_from_json(const Json& j) {
  UniversalReport r;
  r.pass = detail::field(j, "verdict").get<std::string>() == "pass";
  r.failing_checks = detail::field(j, "failing_checks").get<std::vector<std::string>>();
  r.gauge = detail::matrix_from_json<2>(detail::field(j, "gauge"), "gauge");
  r.conjugated = detail::field(j, "conjugated").get<bool>();
  const std::string branch = detail::field(j, "t_branch").get<std::string>();
  r.t_branch = branch == "T" ? TBranch::kT : branch == "ZT" ? TBranch::kZT : TBranch::kUndetermined;
  for (const auto& [key, value] : detail::field(j, "unitaries").items())
    r.unitaries.emplace(gate_label_from_char(key.at(0)), detail::matrix_from_json<2>(value, "unitary"));
  for (auto [key, slot] : {std::pair{"h_phase", &r.h_phase}, std::pair{"t_phase", &r.t_phase}}) {
    const Json& z = detail::field(j, key);
    if (!z.is_null()) *slot = detail::complex_from_json(z);
  }
  return r;
}

inline Json to_json(const NoiseConfig& c) {
  return Json{{"kind", to_string(c.kind)}, {"alpha_min", c.alpha_min},
              {"alpha_max", c.alpha_max},  {"p", c.p},
              {"gamma", c.gamma},          {"seed", c.seed}};
}

inline NoiseConfig noise_config_from_json(const Json& j) {
  NoiseConfig c;
  c.kind = noise_kind_from_string(detail::field(j, "kind").get<std::string>());
  c.alpha_min = j.value("alpha_min", c.alpha_min);
  c.alpha_max = j.value("alpha_max", c.alpha_max);
  c.p = j.value("p", c.p);
  c.gamma = j.value("gamma", c.gamma);
  c.seed = j.value("seed", c.seed);
  c.validate();
  return c;
}

// ---- files -----------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, "'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

/// Reads a model file and checks every invariant; schema or invariant
/// violations raise kParse / kValidation respectively.
inline QuantumModel load_model(const std::string& path) {
  QuantumModel m = [&] {
    try {
      return model_from_json(read_json_file(path));
    } catch (const Json::exception& e) {
      fail(ErrorCode::kParse, "'" + path + "': " + e.what());
    }
  }();
  const auto diags = validate(m);
  if (!diags.empty()) fail(ErrorCode::kValidation, "'" + path + "': " + describe(diags));
  std::map<GateLabel, ChoiChannel> channels;
  for (const auto& [g, ch] : m.channels) channels.emplace(g, ChoiChannel::from_matrix(ch.matrix()));
  return QuantumModel{QubitState::from_matrix(m.state.matrix()), std::move(channels),
                      Povm::from_effects(m.povm.m_plus(), m.povm.m_minus())};
}

}  // namespace qcert
