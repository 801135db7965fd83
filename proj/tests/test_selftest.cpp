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

#include "support.hpp"

namespace qcert {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

QuantumModel noisy(std::uint64_t seed, std::uint64_t index, double alpha_max,
                   NoiseKind kind = NoiseKind::kUnitary, double p = 0, double gamma = 0) {
  NoiseConfig cfg;
  cfg.kind = kind;
  cfg.alpha_max = alpha_max;
  cfg.p = p;
  cfg.gamma = gamma;
  cfg.seed = seed;
  return random_noisy_model(cfg, index);
}

// Target model with every component mixed with a random one at weight w.
QuantumModel perturbed_target(CounterRng& rng, double w) {
  const QuantumModel t = models::target_s_gate();
  QuantumModel m = t;
  m.state = QubitState::from_matrix((1 - w) * t.state.matrix() + w * testing::random_density(rng));
  for (auto g : {GateLabel::kS, GateLabel::kSInv}) {
    const Mat4 c = (1 - w) * t.channel(g).matrix() + w * testing::random_channel(rng).matrix();
    m.channels.insert_or_assign(g, ChoiChannel::from_matrix(c));
  }
  const Mat2 e = rng.uniform() * testing::random_density(rng);
  m.povm = Povm::from_plus((1 - w) * t.povm.m_plus() + w * e);
  return m;
}

void expect_degenerate(const QuantumModel& m, const char* message) {
  try {
    extract_frames(m);
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
    EXPECT_STREQ(e.what(), message);
  }
}

void expect_phase_convention(const Frames& f) {
  const Complex a = f.psi.dot(f.phi);
  const Complex b = f.psi_perp.dot(f.phi);
  const Complex c = f.psi_perp.dot(f.phi_perp);
  const Complex d = f.psi.dot(f.phi_perp);
  EXPECT_NEAR(std::abs(f.psi.dot(f.psi_perp)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(f.phi.dot(f.phi_perp)), 0.0, 1e-9);
  EXPECT_NEAR(a.imag(), 0.0, 1e-9);
  EXPECT_NEAR(b.imag(), 0.0, 1e-9);
  EXPECT_GE(a.real(), 0.0);
  EXPECT_GE(b.real(), 0.0);
  EXPECT_LT(std::abs(c - a), 1e-9);
  EXPECT_LT(std::abs(d + b), 1e-9);
  EXPECT_LE(f.lambda_plus + f.lambda_minus, 1.0 + 1e-12);
}

// --- extract_frames -------------------------------------------------------

TEST(ExtractFrames, TargetModel) {
  const Frames f = extract_frames(models::target_s_gate());
  EXPECT_LT((f.psi - kets::plus()).norm(), 1e-15);
  EXPECT_NEAR(f.lambda_plus, 0.0, 1e-15);
  EXPECT_NEAR(f.lambda_minus, 0.0, 1e-15);
  EXPECT_NEAR(f.eta_plus, 1.0, 1e-15);
  EXPECT_NEAR(f.eta_minus, 1.0, 1e-15);
  // Delta = -Y; phi = e^{i pi/4} (|0> - i|1>)/sqrt2
  const Ket phi = std::polar(1.0, std::numbers::pi / 4) * Ket(1, -kI) * kInvSqrt2;
  EXPECT_LT((f.phi - phi).norm(), 1e-15);
  EXPECT_NEAR(f.psi.dot(f.phi).real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(f.psi.dot(f.phi).imag(), 0.0, 1e-15);
  expect_phase_convention(f);
}

TEST(ExtractFrames, MutuallyUnbiasedForIdealModel) {
  const Frames f = extract_frames(models::target_s_gate());
  EXPECT_NEAR(std::abs(f.psi.dot(f.phi) - kInvSqrt2), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(f.psi_perp.dot(f.phi) - kInvSqrt2), 0.0, 1e-10);
}

TEST(ExtractFrames, DegenerateCases) {
  QuantumModel flat = models::target_s_gate();
  flat.povm = Povm::from_plus(0.5 * Mat2::Identity());
  expect_degenerate(flat, "gauge-undefined measurement");

  QuantumModel same = models::target_s_gate();
  same.channels.insert_or_assign(GateLabel::kSInv, choi_of_unitary(gates::s()));
  expect_degenerate(same, "gauge-undefined channel pair");

  // s -> 1, S -> Z: Delta = X, so phi = |+> = psi and <psi_perp|phi> = 0
  QuantumModel aligned = models::target_s_gate();
  aligned.channels.insert_or_assign(GateLabel::kS, choi_of_unitary(gates::identity()));
  aligned.channels.insert_or_assign(GateLabel::kSInv, choi_of_unitary(gates::z()));
  expect_degenerate(aligned, "degenerate frame overlap");
}

TEST(ExtractFrames, MissingLabel) {
  QuantumModel m = models::target_s_gate();
  m.channels.erase(GateLabel::kSInv);
  EXPECT_THROW(extract_frames(m), Error);
}

TEST(ExtractFrames, PhaseConventionOnRandomModels) {
  for (int k = 0; k < 300; ++k) expect_phase_convention(extract_frames(noisy(51, k, 0.5)));
}

TEST(ExtractFrames, CovariantUnderGlobalUnitary) {
  CounterRng rng(52, 0);
  for (int k = 0; k < 1000; ++k) {
    const QuantumModel m = k % 2 ? models::target_s_gate() : noisy(52, k, 0.4);
    const Mat2 v = testing::random_unitary(rng);
    const Frames f = extract_frames(m);
    const Frames g = extract_frames(conjugate_by(m, v));
    const Ket vpsi = v * f.psi;
    const Complex chi = vpsi.dot(g.psi);
    ASSERT_NEAR(std::abs(chi), 1.0, 1e-9);
    ASSERT_LT((g.psi - chi * vpsi).norm(), 1e-9);
    ASSERT_LT((g.psi_perp - chi * v * f.psi_perp).norm(), 1e-9);
    ASSERT_LT((g.phi - chi * v * f.phi).norm(), 1e-9);
    ASSERT_LT((g.phi_perp - chi * v * f.phi_perp).norm(), 1e-9);
    ASSERT_NEAR(g.lambda_plus, f.lambda_plus, 1e-9);
    ASSERT_NEAR(g.lambda_minus, f.lambda_minus, 1e-9);
    ASSERT_NEAR(g.eta_plus, f.eta_plus, 1e-9);
    ASSERT_NEAR(g.eta_minus, f.eta_minus, 1e-9);
  }
}

// --- gauge_unitary --------------------------------------------------------

TEST(GaugeUnitary, IdealFrames) {
  const Frames f = extract_frames(models::target_s_gate());
  const Mat2 u = gauge_unitary(f);
  EXPECT_LT((u * kets::plus() - f.psi).norm(), 1e-15);
  EXPECT_LT((u * kets::minus() + kI * f.psi_perp).norm(), 1e-15);
  const ChoiChannel& s = models::target_s_gate().channel(GateLabel::kS);
  EXPECT_NEAR(avg_gate_fidelity(s, u * gates::s() * u.adjoint()), 1.0, 1e-12);
}

TEST(GaugeUnitary, AlwaysUnitary) {
  CounterRng rng(53, 0);
  for (int k = 0; k < 500; ++k) {
    const Frames f = extract_frames(k % 2 ? noisy(53, k, 1.0) : perturbed_target(rng, 0.3));
    const Mat2 u = gauge_unitary(f);
    ASSERT_LT(max_abs(u.adjoint() * u - Mat2::Identity()), 1e-10);
    ASSERT_LT((u * kets::plus() - f.psi).norm(), 1e-12);
    ASSERT_LT((u * kets::minus() + kI * f.psi_perp).norm(), 1e-12);
  }
}

// --- certify --------------------------------------------------------------

TEST(Certify, TargetModel) {
  const GaugeReport r = certify(models::target_s_gate(), s_gate_spec());
  EXPECT_NEAR(r.favg_s, 1.0, 1e-12);
  EXPECT_NEAR(r.favg_sinv, 1.0, 1e-12);
  EXPECT_NEAR(r.state_fidelity, 1.0, 1e-12);
  EXPECT_NEAR(r.meas_spectral_distance, 0.0, 1e-12);
  EXPECT_NEAR(r.epsilon_fail, 0.0, 1e-12);
  EXPECT_NEAR(r.model_distance, 0.0, 1e-10);
}

TEST(Certify, NoisyMeasurement) {
  QuantumModel m = models::target_s_gate();
  m.povm = Povm::from_plus(0.98 * projector(kets::plus()) + 0.01 * projector(kets::minus()));
  const GaugeReport r = certify(m, s_gate_spec());
  // failures: 0.02 on each "+" sequence, 0.01 on each "-" sequence
  EXPECT_NEAR(r.epsilon_fail, 0.016, 1e-12);
  EXPECT_NEAR(r.meas_spectral_distance, 0.02, 1e-12);
  EXPECT_LE(r.meas_spectral_distance, 2.5 * r.epsilon_fail);
  EXPECT_NEAR(r.state_fidelity, 1.0, 1e-12);
  EXPECT_NEAR(r.model_distance, 0.02, 1e-12);
}

TEST(Certify, ModelDistanceIsMaxOfComponents) {
  for (int k = 0; k < 200; ++k) {
    const GaugeReport r = certify(noisy(54, k, 0.7), s_gate_spec());
    ASSERT_DOUBLE_EQ(r.model_distance, std::max({1 - r.favg_s, 1 - r.favg_sinv,
                                                  1 - r.state_fidelity, r.meas_spectral_distance}));
    for (double x : {r.favg_s, r.favg_sinv, r.state_fidelity, r.meas_spectral_distance,
                     r.model_distance, r.epsilon_fail}) {
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
    }
  }
}

TEST(Certify, GaugeInvariantReport) {
  CounterRng rng(55, 0);
  for (int k = 0; k < 1000; ++k) {
    const QuantumModel m = k % 3 == 0 ? models::target_s_gate() : noisy(55, k, 0.5);
    const Mat2 v = testing::random_unitary(rng);
    const GaugeReport a = certify(m, s_gate_spec());
    const GaugeReport b = certify(conjugate_by(m, v), s_gate_spec());
    ASSERT_NEAR(a.favg_s, b.favg_s, 1e-9);
    ASSERT_NEAR(a.favg_sinv, b.favg_sinv, 1e-9);
    ASSERT_NEAR(a.state_fidelity, b.state_fidelity, 1e-9);
    ASSERT_NEAR(a.meas_spectral_distance, b.meas_spectral_distance, 1e-9);
    ASSERT_NEAR(a.model_distance, b.model_distance, 1e-9);
    ASSERT_NEAR(a.epsilon_fail, b.epsilon_fail, 1e-9);
    ASSERT_LT(testing::phase_free_distance(b.gauge, v * a.gauge), 1e-9);
  }
}

TEST(Certify, AcceptsSubsetOfSGateSequences) {
  const ProtocolSpec sub({{Sequence::parse(""), Outcome::kPlus, 0.5},
                          {Sequence::parse("ss"), Outcome::kMinus, 0.5}});
  EXPECT_NEAR(certify(models::target_s_gate(), sub).epsilon_fail, 0.0, 1e-12);
  EXPECT_THROW(certify(models::target_universal(), universal_spec()), Error);
}

// Proved constants: F_state >= 1 - 7.5 eps and ||M+ - target|| <= 2.5 eps.
void check_proved_bounds(const QuantumModel& m, int& checked) {
  GaugeReport r;
  try {
    r = certify(m, s_gate_spec());
  } catch (const Error& e) {
    ASSERT_EQ(e.code(), ErrorCode::kDegenerate);
    return;
  }
  if (r.epsilon_fail >= 0.1) return;
  ++checked;
  ASSERT_GE(r.state_fidelity, 1 - 7.5 * r.epsilon_fail - 1e-9) << r.epsilon_fail;
  ASSERT_LE(r.meas_spectral_distance, 2.5 * r.epsilon_fail + 1e-9) << r.epsilon_fail;
}

TEST(Certify, ProvedBoundsOnUnitaryNoise) {
  int checked = 0;
  for (int k = 0; k < 3000; ++k) check_proved_bounds(noisy(56, k, k % 2 ? 1.0 : 0.2), checked);
  EXPECT_GT(checked, 1000);
}

TEST(Certify, ProvedBoundsOnIncoherentNoise) {
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    check_proved_bounds(noisy(57, k, 0.2, NoiseKind::kDepolarizing, 0.02 * (k % 5)), checked);
    check_proved_bounds(noisy(58, k, 0.2, NoiseKind::kAmplitudeDamping, 0, 0.03 * (k % 5)),
                         checked);
  }
  EXPECT_GT(checked, 1000);
}

TEST(Certify, ProvedBoundsOnGenericPerturbations) {
  CounterRng rng(59, 0);
  int checked = 0;
  for (int k = 0; k < 3000; ++k) check_proved_bounds(perturbed_target(rng, 0.15 * rng.uniform()), checked);
  EXPECT_GT(checked, 1000);
}

}  // namespace
}  // namespace qcert
