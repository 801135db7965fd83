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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace qcert {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("qcert_" + std::string(info->test_suite_name()) + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NoiseConfig unitary(double amax, std::uint64_t seed) {
  NoiseConfig c;
  c.alpha_max = amax;
  c.seed = seed;
  return c;
}

// --- scatter_sweep --------------------------------------------------------

TEST(ScatterSweep, SingleExactSample) {
  const SweepResult r = scatter_sweep(1, unitary(0.0, 1));
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_NEAR(r.points[0].epsilon_fail, 0.0, 1e-12);
  EXPECT_NEAR(r.points[0].model_distance, 0.0, 1e-10);
  EXPECT_EQ(r.summary.samples, 1u);
  EXPECT_EQ(r.summary.retained, 0u);
  EXPECT_EQ(r.summary.worst_slope, 0.0);
  EXPECT_FALSE(r.summary.worst_index.has_value());
}

TEST(ScatterSweep, RejectsZeroSamples) { EXPECT_THROW(scatter_sweep(0, unitary(1, 1)), Error); }

TEST(ScatterSweep, PointsMatchDirectCertification) {
  const NoiseConfig c = unitary(1.0, 3);
  const SweepResult r = scatter_sweep(50, c);
  ASSERT_EQ(r.points.size() + r.summary.failures, 50u);
  for (const auto& p : r.points) {
    const GaugeReport g = certify(random_noisy_model(c, p.index), s_gate_spec());
    EXPECT_EQ(p.epsilon_fail, g.epsilon_fail);
    EXPECT_EQ(p.model_distance, g.model_distance);
    EXPECT_EQ(p.d_state, g.state_distance());
    EXPECT_EQ(p.d_meas, g.meas_spectral_distance);
    EXPECT_EQ(p.infid_s, g.infid_s());
    EXPECT_EQ(p.infid_sinv, g.infid_sinv());
  }
}

TEST(ScatterSweep, EnvelopeAndProvedConstants) {
  const SweepResult r = scatter_sweep(5000, unitary(1.0, 4));
  ASSERT_GT(r.summary.retained, 4000u);
  double max_ratio = 0;
  for (const auto& p : r.points) {
    for (double x : {p.epsilon_fail, p.model_distance, p.d_state, p.d_meas, p.infid_s, p.infid_sinv}) {
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
    }
    ASSERT_DOUBLE_EQ(p.model_distance, std::max({p.d_state, p.d_meas, p.infid_s, p.infid_sinv}));
    if (p.epsilon_fail < r.summary.epsilon_floor) continue;
    ASSERT_LE(p.model_distance, r.summary.worst_slope * p.epsilon_fail * (1 + 1e-15));
    ASSERT_LE(p.d_state, 7.5 * p.epsilon_fail + 1e-9);
    ASSERT_LE(p.d_meas, 2.5 * p.epsilon_fail + 1e-9);
    max_ratio = std::max(max_ratio, p.model_distance / p.epsilon_fail);
  }
  EXPECT_EQ(max_ratio, r.summary.worst_slope);
  ASSERT_TRUE(r.summary.worst_index.has_value());
  const auto w = *std::find_if(r.points.begin(), r.points.end(), [&](const ScatterPoint& p) {
    return p.index == *r.summary.worst_index;
  });
  EXPECT_EQ(w.model_distance / w.epsilon_fail, r.summary.worst_slope);
}

TEST(ScatterSweep, DeskScaleSlopeBand) {
  const SweepResult r = scatter_sweep(10000, unitary(1.0, 5), kDefaultEpsilonFloor, 2, false);
  EXPECT_TRUE(r.points.empty());
  EXPECT_GE(r.summary.worst_slope, 2.0);
  EXPECT_LE(r.summary.worst_slope, 5.5);
}

TEST(ScatterSweep, IndependentOfWorkerCount) {
  const NoiseConfig c = unitary(1.0, 6);
  const SweepResult a = scatter_sweep(700, c, kDefaultEpsilonFloor, 1);
  const SweepResult b = scatter_sweep(700, c, kDefaultEpsilonFloor, 4);
  EXPECT_EQ(format_csv(a.points), format_csv(b.points));
  EXPECT_EQ(to_json(a.summary).dump(), to_json(b.summary).dump());
}

TEST(ScatterSweep, SummaryOnlyModeAgrees) {
  const NoiseConfig c = unitary(0.5, 7);
  const SweepResult a = scatter_sweep(300, c);
  const SweepResult b = scatter_sweep(300, c, kDefaultEpsilonFloor, 1, false);
  EXPECT_EQ(to_json(a.summary).dump(), to_json(b.summary).dump());
}

TEST(ScatterSweep, FloorExcludesNearPerfectModels) {
  const SweepResult r = scatter_sweep(200, unitary(1e-5, 8), 1e-6);
  EXPECT_EQ(r.points.size(), 200u);
  std::uint64_t above = 0;
  for (const auto& p : r.points) above += p.epsilon_fail >= 1e-6;
  EXPECT_EQ(r.summary.retained, above);
  EXPECT_LT(above, 200u);
}

TEST(ScatterSweep, DegenerateSamplesCountedNotFatal) {
  // Amplitude damping with gamma = 1 sends every state to |0>; the
  // measurement effect becomes proportional to the identity.
  NoiseConfig c = unitary(0.3, 9);
  c.kind = NoiseKind::kAmplitudeDamping;
  c.gamma = 1.0;
  const SweepResult r = scatter_sweep(20, c);
  EXPECT_EQ(r.summary.failures, 20u);
  EXPECT_EQ(r.summary.failed_indices.size(), 20u);
  EXPECT_TRUE(r.points.empty());
  EXPECT_EQ(r.summary.retained, 0u);
}

// --- CSV export -----------------------------------------------------------

TEST(ExportCsv, HeaderOnlyForNoPoints) {
  TempDir dir;
  const std::string path = dir.file("empty.csv");
  export_csv({}, SweepSummary{}, path);
  EXPECT_EQ(slurp(path), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(fs::exists(dir.file("empty.summary.json")));
  EXPECT_TRUE(read_csv(path).empty());
}

TEST(ExportCsv, ThreePointsFourLines) {
  TempDir dir;
  const std::string path = dir.file("three.csv");
  std::vector<ScatterPoint> pts = {{0, 0.125, 0.5, 0.25, 0.0625, 0.5, 0.375},
                                   {5, 1e-5, 4.2e-5, 3e-5, 0, 4.2e-5, 1e-6},
                                   {9, 0.123456789012, 0.6, 0.1, 0.2, 0.3, 0.6}};
  export_csv(pts, SweepSummary{}, path);
  const std::string text = slurp(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_NE(text.find("\n0,0.125,0.5,0.25,0.0625,0.5,0.375\n"), std::string::npos);
  EXPECT_NE(text.find("\n9,0.123456789012,"), std::string::npos);
  const auto back = read_csv(path);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back[k].index, pts[k].index);
    EXPECT_EQ(back[k].epsilon_fail, pts[k].epsilon_fail);
    EXPECT_EQ(back[k].model_distance, pts[k].model_distance);
    EXPECT_EQ(back[k].d_state, pts[k].d_state);
    EXPECT_EQ(back[k].d_meas, pts[k].d_meas);
    EXPECT_EQ(back[k].infid_s, pts[k].infid_s);
    EXPECT_EQ(back[k].infid_sinv, pts[k].infid_sinv);
  }
}

TEST(ExportCsv, RoundTripIsStable) {
  TempDir dir;
  const SweepResult r = scatter_sweep(100, unitary(1.0, 10));
  const std::string path = dir.file("sweep.csv");
  export_csv(r.points, r.summary, path);
  const auto back = read_csv(path);
  ASSERT_EQ(back.size(), r.points.size());
  for (std::size_t k = 0; k < back.size(); ++k)
    EXPECT_NEAR(back[k].model_distance, r.points[k].model_distance,
                1e-11 * std::max(1e-300, r.points[k].model_distance));
  EXPECT_EQ(format_csv(back), slurp(path));

  const SweepSummary s = sweep_summary_from_json(read_json_file(summary_path_for(path)));
  EXPECT_EQ(s.samples, 100u);
  EXPECT_EQ(s.worst_slope, r.summary.worst_slope);
  EXPECT_EQ(s.worst_index, r.summary.worst_index);
  EXPECT_EQ(s.noise.seed, 10u);
}

TEST(ExportCsv, SummaryCarriesSeed) {
  SweepSummary s;
  s.noise.seed = 77;
  const Json j = to_json(s);
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 77u);
  EXPECT_TRUE(j.at("worst_index").is_null());
}

TEST(ExportCsv, UnwritablePathIsIoError) {
  try {
    export_csv({}, SweepSummary{}, "/nonexistent-dir/x/out.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x/out.csv"), std::string::npos);
  }
}

TEST(ReadCsv, RejectsBadInput) {
  TempDir dir;
  const std::string bad_header = dir.file("h.csv");
  write_text_file(bad_header, "a,b,c\n");
  EXPECT_THROW(read_csv(bad_header), Error);
  const std::string bad_row = dir.file("r.csv");
  write_text_file(bad_row, std::string(kCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_csv(bad_row), Error);
  EXPECT_THROW(read_csv(dir.file("missing.csv")), Error);
}

TEST(SummaryPath, ReplacesExtension) {
  EXPECT_EQ(summary_path_for("out/results.csv"), "out/results.summary.json");
  EXPECT_EQ(summary_path_for("results"), "results.summary.json");
}

}  // namespace
}  // namespace qcert
