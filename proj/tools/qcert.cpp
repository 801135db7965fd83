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

// qcert: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input,
// 3 degenerate model (gauge not defined).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "qcert/qcert.hpp"

namespace {

using namespace qcert;

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kDegenerateModel = 3 };

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument:
      return kUsage;
    case ErrorCode::kDegenerate:
      return kDegenerateModel;
    case ErrorCode::kValidation:
    case ErrorCode::kParse:
    case ErrorCode::kIo:
      return kInput;
  }
  return kInput;
}

// Errors raised while reading input files are input errors even when the
// library classifies them as bad arguments (e.g. invalid masses in a spec).
template <typename F>
auto as_input(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidArgument) throw;
    throw Error(ErrorCode::kValidation, "'" + path + "': " + e.what());
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("QCERT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-')
    fail(ErrorCode::kInvalidArgument, std::string("QCERT_SEED is not an unsigned integer: ") + env);
  return v;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(const Mat2& m) {
  std::string s = "[";
  for (int r = 0; r < 2; ++r) {
    s += r ? "; " : "";
    for (int c = 0; c < 2; ++c) {
      auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s%.6f%+.6fi", c ? ", " : "", clean(m(r, c).real()),
                    clean(m(r, c).imag()));
      s += buf;
    }
  }
  return s + "]";
}

void emit(const Json& j, const std::string& out_path) {
  if (!out_path.empty()) write_text_file(out_path, j.dump(2) + "\n");
}

struct SpecChoice {
  std::string name = "s-gate";
  std::string file;

  ProtocolSpec load() const {
    if (!file.empty())
      return as_input(file, [&] {
        try {
          return spec_from_json(read_json_file(file));
        } catch (const Json::exception& e) {
          throw Error(ErrorCode::kParse, "'" + file + "': " + e.what());
        }
      });
    return name == "universal" ? universal_spec() : s_gate_spec();
  }
};

void require_labels(const QuantumModel& m, const ProtocolSpec& spec, const std::string& path) {
  for (auto g : spec.labels_used())
    if (!m.has(g))
      fail(ErrorCode::kValidation,
           "'" + path + "': model has no channel '" + std::string(1, to_char(g)) + "'");
}

void add_spec_options(CLI::App* cmd, SpecChoice& spec) {
  auto* name = cmd->add_option("--spec", spec.name, "Sequence set: s-gate or universal")
                   ->check(CLI::IsMember({"s-gate", "universal"}))
                   ->capture_default_str();
  cmd->add_option("--spec-file", spec.file, "Sequence set from a JSON file")->excludes(name);
}

// --- subcommands -------------------------------------------------------------

struct CertifyArgs {
  std::string model;
  SpecChoice spec;
  bool json = false;
  std::string out;
};

int cmd_certify(const CertifyArgs& a) {
  const QuantumModel m = load_model(a.model);
  const ProtocolSpec spec = a.spec.load();
  require_labels(m, spec, a.model);
  const GaugeReport r = as_input(a.model, [&] { return certify(m, spec); });
  const Json j = to_json(r);
  emit(j, a.out);
  if (a.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "favg_s                  " << fmt(r.favg_s) << "\n"
              << "favg_sinv               " << fmt(r.favg_sinv) << "\n"
              << "state_fidelity          " << fmt(r.state_fidelity) << "\n"
              << "meas_spectral_distance  " << fmt(r.meas_spectral_distance) << "\n"
              << "model_distance          " << fmt(r.model_distance) << "\n"
              << "epsilon_fail            " << fmt(r.epsilon_fail) << "\n"
              << "gauge                   " << fmt(r.gauge) << "\n";
  }
  return kOk;
}

struct RunArgs {
  std::string model;
  SpecChoice spec;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

int cmd_run(const RunArgs& a) {
  const QuantumModel m = load_model(a.model);
  const ProtocolSpec spec = a.spec.load();
  require_labels(m, spec, a.model);
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const RunResult r = run_protocol(m, spec, a.n, seed);
  if (a.json) {
    Json j = to_json(r);
    j["seed"] = seed;
    j["pass_probability"] = pass_probability(m, spec);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.verdict == Verdict::kAccept ? "accept" : "reject") << " after "
              << r.repetitions_executed << " of " << a.n << " repetitions (seed " << seed << ")\n";
    if (r.failing_sequence)
      std::cout << "sequence " << r.failing_sequence->display() << " gave outcome "
                << to_string(*r.observed_outcome) << "\n";
  }
  return kOk;
}

struct UniversalArgs {
  std::string model;
  double tol = 1e-7;
  bool json = false;
  std::string out;
};

int cmd_universal(const UniversalArgs& a) {
  const QuantumModel m = load_model(a.model);
  require_labels(m, universal_spec(), a.model);
  const UniversalReport r = verify_universal(m, a.tol);
  const Json j = to_json(r);
  emit(j, a.out);
  if (a.json) {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "verdict      " << (r.pass ? "pass" : "fail") << "\n"
            << "conjugated   " << (r.conjugated ? "yes" : "no") << "\n"
            << "t_branch     " << to_string(r.t_branch) << "\n";
  if (r.pass) std::cout << "gauge        " << fmt(r.gauge) << "\n";
  for (const auto& [g, u] : r.unitaries) std::cout << "U_" << to_char(g) << "          " << fmt(u) << "\n";
  if (r.failing_checks.empty()) {
    std::cout << "checks       all passed\n";
  } else {
    for (const auto& c : r.failing_checks) std::cout << "FAILED       " << c << "\n";
  }
  return kOk;
}

struct ComplexityArgs {
  double eps = 0;
  double delta = 0;
  std::optional<double> slope;
  bool json = false;
};

int cmd_complexity(const ComplexityArgs& a) {
  const std::uint64_t n = sample_complexity(a.eps, a.delta, a.slope);
  if (a.json) {
    std::cout << Json{{"eps", a.eps},
                      {"delta", a.delta},
                      {"slope", a.slope ? Json(*a.slope) : Json(nullptr)},
                      {"repetitions", n}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << n << "\n";
  }
  return kOk;
}

struct SweepArgs {
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::string noise = "unitary";
  NoiseConfig cfg;
  double floor = kDefaultEpsilonFloor;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  bool summary_only = false;
  bool json = false;
};

int cmd_sweep(SweepArgs a) {
  a.cfg.kind = noise_kind_from_string(a.noise);
  a.cfg.seed = a.seed ? *a.seed : default_seed();
  a.cfg.validate();
  const std::string summary_path = summary_path_for(a.out);
  // fail on unwritable destinations before the sweep starts
  for (const std::string& p : {a.out, summary_path}) {
    std::ofstream probe(p, std::ios::app);
    if (!probe) fail(ErrorCode::kIo, "cannot write '" + p + "'");
  }
  const SweepResult r = scatter_sweep(a.samples, a.cfg, a.floor, a.workers, !a.summary_only);
  if (a.summary_only) {
    write_text_file(a.out, std::string(kCsvHeader) + "\n");
    write_text_file(summary_path, to_json(r.summary).dump(2) + "\n");
  } else {
    export_csv(r.points, r.summary, a.out);
  }
  const SweepSummary& s = r.summary;
  if (a.json) {
    std::cout << to_json(s).dump(2) << "\n";
  } else {
    std::cout << "samples      " << s.samples << "\n"
              << "retained     " << s.retained << "\n"
              << "failures     " << s.failures << "\n"
              << "worst_slope  " << fmt(s.worst_slope);
    if (s.worst_index) std::cout << " (sample " << *s.worst_index << ")";
    std::cout << "\n"
              << "wrote        " << a.out << ", " << summary_path << "\n";
  }
  return kOk;
}

struct ModelArgs {
  std::string preset;
  std::string out;
};

QuantumModel preset_model(const std::string& name) {
  if (name == "target-s") return models::target_s_gate();
  if (name == "target-universal") return models::target_universal();
  if (name == "universal-zt") return models::universal_zt();
  if (name == "universal-conjugated") return models::universal_conjugated();
  if (name == "universal-xhx") return models::universal_xhx();
  fail(ErrorCode::kInvalidArgument, "unknown preset '" + name + "'");
}

int cmd_model(const ModelArgs& a) {
  const std::string text = model_to_json(preset_model(a.preset)).dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text_file(a.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-testing certification of single-qubit gate sets"};
  app.require_subcommand(1);

  CertifyArgs certify_args;
  auto* certify_cmd = app.add_subcommand("certify", "Gauge extraction and distance certificate for an S-gate model");
  certify_cmd->add_option("--model", certify_args.model, "Model JSON file")->required();
  add_spec_options(certify_cmd, certify_args.spec);
  certify_cmd->add_flag("--json", certify_args.json, "Print the report as JSON");
  certify_cmd->add_option("--out", certify_args.out, "Also write the JSON report to this file");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Simulate the protocol on a model");
  run_cmd->add_option("--model", run_args.model, "Model JSON file")->required();
  add_spec_options(run_cmd, run_args.spec);
  run_cmd->add_option("--n", run_args.n, "Number of repetitions")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run_args.seed, "Random seed (default: $QCERT_SEED or 0)");
  run_cmd->add_flag("--json", run_args.json, "Print the result as JSON");

  UniversalArgs universal_args;
  auto* universal_cmd = app.add_subcommand("universal", "Exact verification of an {s, s^-1, h, t} model");
  universal_cmd->add_option("--model", universal_args.model, "Model JSON file")->required();
  universal_cmd->add_option("--tol", universal_args.tol, "Determinism tolerance")
      ->check(CLI::Range(1e-15, 0.5))
      ->capture_default_str();
  universal_cmd->add_flag("--json", universal_args.json, "Print the report as JSON");
  universal_cmd->add_option("--out", universal_args.out, "Also write the JSON report to this file");

  ComplexityArgs complexity_args;
  auto* complexity_cmd = app.add_subcommand("complexity", "Number of repetitions for given eps and delta");
  complexity_cmd->add_option("--eps", complexity_args.eps, "Failure probability, or model distance with --slope")->required();
  complexity_cmd->add_option("--delta", complexity_args.delta, "Confidence parameter")->required();
  complexity_cmd->add_option("--slope", complexity_args.slope, "Distance / failure-probability constant");
  complexity_cmd->add_flag("--json", complexity_args.json, "Print the result as JSON");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Failure probability vs model distance over random noisy models");
  sweep_cmd->add_option("--samples", sweep_args.samples, "Number of models")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_args.seed, "Random seed (default: $QCERT_SEED or 0)");
  sweep_cmd->add_option("--noise", sweep_args.noise, "unitary, depolarizing or amplitude-damping")
      ->check(CLI::IsMember({"unitary", "depolarizing", "amplitude-damping"}))
      ->capture_default_str();
  sweep_cmd->add_option("--alpha-min", sweep_args.cfg.alpha_min, "Lower end of the rotation angle range")->capture_default_str();
  sweep_cmd->add_option("--alpha-max", sweep_args.cfg.alpha_max, "Upper end of the rotation angle range")->capture_default_str();
  sweep_cmd->add_option("--p", sweep_args.cfg.p, "Depolarizing strength")->capture_default_str();
  sweep_cmd->add_option("--gamma", sweep_args.cfg.gamma, "Amplitude damping strength")->capture_default_str();
  sweep_cmd->add_option("--floor", sweep_args.floor, "Smallest failure probability entering the slope")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--workers", sweep_args.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  sweep_cmd->add_option("--out", sweep_args.out, "CSV output; the summary goes next to it as .summary.json")->required();
  sweep_cmd->add_flag("--summary-only", sweep_args.summary_only, "Keep only the summary (header-only CSV)");
  sweep_cmd->add_flag("--json", sweep_args.json, "Print the summary as JSON");

  ModelArgs model_args;
  auto* model_cmd = app.add_subcommand("model", "Print a preset model as JSON");
  model_cmd->add_option("--preset", model_args.preset, "Preset name")
      ->required()
      ->check(CLI::IsMember({"target-s", "target-universal", "universal-zt", "universal-conjugated",
                             "universal-xhx"}));
  model_cmd->add_option("--out", model_args.out, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*certify_cmd) return cmd_certify(certify_args);
    if (*run_cmd) return cmd_run(run_args);
    if (*universal_cmd) return cmd_universal(universal_args);
    if (*complexity_cmd) return cmd_complexity(complexity_args);
    if (*sweep_cmd) return cmd_sweep(sweep_args);
    if (*model_cmd) return cmd_model(model_args);
  } catch (const Error& e) {
    std::cerr << "qcert: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "qcert: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
