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

// Scatter experiment: failure probability of random noisy S-gate models
// against their distance to the gauge-rotated target, and the worst ratio
// distance / failure probability over the sample.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qcert/error.hpp"
#include "qcert/protocol.hpp"
#include "qcert/randmodels.hpp"
#include "qcert/selftest.hpp"
#include "qcert/serialize.hpp"

namespace qcert {

struct ScatterPoint {
  std::uint64_t index = 0;
  double epsilon_fail = 0;
  double model_distance = 0;
  double d_state = 0;
  double d_meas = 0;
  double infid_s = 0;
  double infid_sinv = 0;
};

struct SweepSummary {
  std::uint64_t samples = 0;
  std::uint64_t retained = 0;  // points entering the slope
  std::uint64_t failures = 0;  // frame extraction failed
  std::vector<std::uint64_t> failed_indices;
  double worst_slope = 0;
  std::optional<std::uint64_t> worst_index;
  double epsilon_floor = 1e-8;
  NoiseConfig noise;
};

struct SweepResult {
  std::vector<ScatterPoint> points;  // sorted by index; failed samples absent
  SweepSummary summary;
};

inline constexpr double kDefaultEpsilonFloor = 1e-8;

/// Sweeps samples 0..m-1 of `cfg`. Indices are processed in blocks; within
/// a block `workers` threads split the range. The result does not depend on
/// the number of workers. With `keep_points` false only the summary is kept.
inline SweepResult scatter_sweep(std::uint64_t m, const NoiseConfig& cfg,
                                 double epsilon_floor = kDefaultEpsilonFloor,
                                 unsigned workers = 1, bool keep_points = true) {
  if (m < 1) fail(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  if (!(epsilon_floor >= 0)) fail(ErrorCode::kInvalidArgument, "epsilon floor must be >= 0");
  cfg.validate();
  const ProtocolSpec spec = s_gate_spec();
  constexpr std::uint64_t kBlock = 1 << 16;
  workers = std::clamp(workers, 1u, 256u);

  SweepResult out;
  out.summary.samples = m;
  out.summary.epsilon_floor = epsilon_floor;
  out.summary.noise = cfg;

  std::vector<std::optional<ScatterPoint>> slots;
  for (std::uint64_t base = 0; base < m; base += kBlock) {
    const std::uint64_t count = std::min(kBlock, m - base);
    slots.assign(count, std::nullopt);
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t k = begin; k < end; ++k) {
        const QuantumModel model = random_noisy_model(cfg, base + k);
        try {
          const GaugeReport r = certify(model, spec);
          slots[k] = ScatterPoint{base + k,           r.epsilon_fail, r.model_distance,
                                  r.state_distance(), r.meas_spectral_distance,
                                  r.infid_s(),        r.infid_sinv()};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kDegenerate) throw;
        }
      }
    };
    const unsigned n_threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    if (n_threads <= 1) {
      work(0, count);
    } else {
      std::vector<std::thread> pool;
      const std::uint64_t chunk = (count + n_threads - 1) / n_threads;
      for (unsigned w = 0; w < n_threads; ++w) {
        const std::uint64_t b = std::min(count, w * chunk);
        pool.emplace_back(work, b, std::min(count, b + chunk));
      }
      for (auto& t : pool) t.join();
    }

    for (std::uint64_t k = 0; k < count; ++k) {
      if (!slots[k]) {
        ++out.summary.failures;
        out.summary.failed_indices.push_back(base + k);
        continue;
      }
      const ScatterPoint& p = *slots[k];
      if (keep_points) out.points.push_back(p);
      if (p.epsilon_fail < epsilon_floor || p.epsilon_fail <= 0) continue;
      ++out.summary.retained;
      const double slope = p.model_distance / p.epsilon_fail;
      if (slope > out.summary.worst_slope) {
        out.summary.worst_slope = slope;
        out.summary.worst_index = p.index;
      }
    }
  }
  return out;
}

inline Json to_json(const SweepSummary& s) {
  return Json{{"samples", s.samples},
              {"retained", s.retained},
              {"failures", s.failures},
              {"failed_indices", s.failed_indices},
              {"worst_slope", s.worst_slope},
              {"worst_index", s.worst_index ? Json(*s.worst_index) : Json(nullptr)},
              {"epsilon_floor", s.epsilon_floor},
              {"seed", s.noise.seed},
              {"noise", to_json(s.noise)}};
}

inline SweepSummary sweep_summary_from_json(const Json& j) {
  SweepSummary s;
  s.samples = detail::field(j, "samples").get<std::uint64_t>();
  s.retained = detail::field(j, "retained").get<std::uint64_t>();
  s.failures = detail::field(j, "failures").get<std::uint64_t>();
  s.failed_indices = detail::field(j, "failed_indices").get<std::vector<std::uint64_t>>();
  s.worst_slope = detail::number(detail::field(j, "worst_slope"), "worst_slope");
  const Json& wi = detail::field(j, "worst_index");
  if (!wi.is_null()) s.worst_index = wi.get<std::uint64_t>();
  s.epsilon_floor = detail::number(detail::field(j, "epsilon_floor"), "epsilon_floor");
  s.noise = noise_config_from_json(detail::field(j, "noise"));
  return s;
}

inline constexpr const char* kCsvHeader = "index,epsilon,distance,d_state,d_meas,infid_s,infid_sinv";

/// "results.csv" -> "results.summary.json".
inline std::string summary_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".summary.json");
  return p.string();
}

inline std::string format_csv(const std::vector<ScatterPoint>& points) {
  std::string out = std::string(kCsvHeader) + "\n";
  char buf[256];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  static_cast<unsigned long long>(p.index), p.epsilon_fail, p.model_distance,
                  p.d_state, p.d_meas, p.infid_s, p.infid_sinv);
    out += buf;
  }
  return out;
}

/// Writes the CSV to `path` and the summary to `summary_path_for(path)`.
inline void export_csv(const std::vector<ScatterPoint>& points, const SweepSummary& summary,
                       const std::string& path) {
  write_text_file(path, format_csv(points));
  write_text_file(summary_path_for(path), to_json(summary).dump(2) + "\n");
}

inline std::vector<ScatterPoint> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    fail(ErrorCode::kParse, "'" + path + "': unexpected CSV header");
  std::vector<ScatterPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ScatterPoint p;
    unsigned long long index = 0;
    const int n = std::sscanf(line.c_str(), "%llu,%lf,%lf,%lf,%lf,%lf,%lf", &index,
                              &p.epsilon_fail, &p.model_distance, &p.d_state, &p.d_meas,
                              &p.infid_s, &p.infid_sinv);
    if (n != 7)
      fail(ErrorCode::kParse, "'" + path + "' line " + std::to_string(line_no) + ": bad record");
    p.index = index;
    points.push_back(p);
  }
  return points;
}

}  // namespace qcert
