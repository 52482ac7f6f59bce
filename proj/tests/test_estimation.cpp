// Copyright 2026 The tetrisyk Authors
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

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "tetrisyk/echo.hpp"
#include "tetrisyk/errors.hpp"
#include "tetrisyk/estimators.hpp"
#include "tetrisyk/evolution.hpp"
#include "tetrisyk/mirror.hpp"
#include "tetrisyk/noise_theory.hpp"
#include "tetrisyk/resources.hpp"
#include "tetrisyk/trotter.hpp"

namespace tetrisyk {
namespace {

using cplx = std::complex<double>;

TEST(Estimators, ShotValues) {
  EXPECT_EQ(shot_value({0, 0}, EchoObservable::kProjectZero), 1.0);
  EXPECT_EQ(shot_value({1, 0}, EchoObservable::kProjectZero), -1.0);
  EXPECT_EQ(shot_value({0, 4}, EchoObservable::kProjectZero), 0.0);
  EXPECT_EQ(shot_value({1, 4}, EchoObservable::kProjectZeroMitigated), -1.0);
  EXPECT_EQ(shot_value({0, 6}, EchoObservable::kProjectZeroMitigated), 0.0);
  EXPECT_EQ(shot_value({1, 6}, EchoObservable::kIdentityOnSystem), -1.0);
  for (EchoObservable o : kEchoObservables) EXPECT_EQ(echo_observable_from_string(to_string(o)), o);
  EXPECT_THROW(echo_observable_from_string("zz"), ParameterError);
}

TEST(Estimators, CircuitLevelStandardError) {
  const std::vector<std::vector<ShotOutcome>> shots = {{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}, {{1, 0}, {1, 0}}};
  const auto r = estimate(shots, EchoObservable::kIdentityOnSystem, 0.5);
  // circuit means 1, 0, -1; rescaled by 1/lambda = 2.
  EXPECT_DOUBLE_EQ(r.mean, 0.0);
  EXPECT_NEAR(r.stderr, 2.0 / std::sqrt(3.0), 1e-14);
  EXPECT_TRUE(r.stderr_defined);
  const std::vector<double> one = {3.0};
  EXPECT_FALSE(mean_and_error(one).stderr_defined);
}

TEST(Estimators, LgaeFormulas) {
  const auto lin = lgae_linear(0.8, 0.01, 0.5, 0.02, 0.25);
  EXPECT_NEAR(lin.value, (0.8 - 0.25 * 0.5) / 0.75, 1e-15);
  EXPECT_NEAR(lin.stderr, std::sqrt(0.01 * 0.01 + 0.0625 * 0.0004) / 0.75, 1e-15);
  const auto ex = lgae_exponential(0.8, 0.01, 0.5, 0.02, 0.25);
  EXPECT_NEAR(ex.value, std::pow(0.8, 1 / 0.75) * std::pow(0.5, -0.25 / 0.75), 1e-14);
  EXPECT_THROW(lgae_exponential(-0.1, 0.01, 0.5, 0.02, 0.25), DomainError);
  EXPECT_THROW(lgae_linear(0.8, 0.01, 0.5, 0.02, 1.0), ParameterError);
}

TEST(Estimators, OptimalShotSplitMinimizesSigma) {
  const double s0 = 0.7, sa = 1.9, alpha = 0.3;
  const auto split = optimal_shot_split(s0, sa, alpha);
  const auto sigma = [&](double x) { return lgae_sigma_for_budget(s0, sa, alpha, x, 1.0); };
  const double x = oracle::golden_section(sigma, 1e-9, 1 - 1e-9, 1e-13);
  EXPECT_NEAR(split.fraction_shallow, x, 1e-6);
  EXPECT_NEAR(split.sigma, sigma(x), 1e-9);
  EXPECT_NEAR(split.fraction_shallow, s0 / (s0 + alpha * sa), 1e-12);
  EXPECT_NEAR(lgae_sigma_for_budget(s0, sa, alpha, 0.5, 400.0), sigma(0.5) / 20.0, 1e-14);
}

/// g = e^{iat}, h = e^{ibt} on [0, t] with step dt.
NoiseModelInputs toy_inputs(double a, double b, double q, double t, double dt, NoiseObservable obs) {
  NoiseModelInputs in;
  const auto n = static_cast<std::size_t>(std::llround(t / dt));
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = i * dt;
    in.times.push_back(s);
    in.loschmidt.push_back(std::exp(cplx(0, a * s)));
    in.trace.push_back(std::exp(cplx(0, b * s)));
  }
  in.rate_q = q;
  in.observable = obs;
  in.num_qubits = 2;
  return in;
}

/// Closed form of F = g + q h * F for the toy kernels.
cplx toy_F(double a, double b, double q, double t) {
  const cplx d(0, a - b);
  return d / (d - q) * std::exp(cplx(0, a * t)) - q / (d - q) * std::exp(cplx(q, b) * t);
}

TEST(NoiseTheory, ZeroRateGivesNoiselessSignal) {
  auto in = toy_inputs(1.1, -0.3, 0.0, 1.0, 0.01, NoiseObservable::kProjectZero);
  in.lambda = 0.8;
  const auto F = solve_F(in);
  for (std::size_t i = 0; i < F.size(); ++i) EXPECT_EQ(F[i], in.loschmidt[i]);
  EXPECT_NEAR(std::abs(noisy_expectation(in, F) - 0.8 * in.loschmidt.back()), 0.0, 1e-15);
}

TEST(NoiseTheory, SolverMatchesClosedFormWithSecondOrderError) {
  const double a = 1.3, b = -0.4, q = 0.7, t = 1.0;
  double previous = 0.0;
  for (double dt : {0.01, 0.005, 0.0025}) {
    const auto in = toy_inputs(a, b, q, t, dt, NoiseObservable::kIdentity);
    const auto F = solve_F(in);
    const double err = std::abs(F.back() - toy_F(a, b, q, t));
    EXPECT_LT(err, 1e-4);
    if (previous > 0) EXPECT_NEAR(previous / err, 4.0, 0.3);
    previous = err;
    // With K_I = h the noisy signal collapses to lambda e^{-qt} F(t).
    EXPECT_NEAR(std::abs(noisy_expectation(in, F) - std::exp(-q * t) * F.back()), 0.0, 1e-4);
  }
}

TEST(NoiseTheory, PicardIteratesConverge) {
  const auto in = toy_inputs(0.9, 0.2, 0.5, 1.0, 0.005, NoiseObservable::kProjectZero);
  const auto solved = noisy_expectation(in, solve_F(in));
  EXPECT_EQ(picard_F(in, 0), in.loschmidt);
  double previous = 1.0;
  for (int k : {1, 2, 3, 4}) {
    const double err = std::abs(picard_expectation(in, k) - solved);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(std::abs(picard_expectation(in, 12) - solved), 1e-12);
}

TEST(NoiseTheory, PerturbativeSeriesHasExpectedOrder) {
  for (int order : {0, 1, 2}) {
    double errs[2];
    for (int k = 0; k < 2; ++k) {
      const double q = 0.2 / (1 << k);
      const auto in = toy_inputs(1.0, -0.5, q, 1.0, 0.0025, NoiseObservable::kProjectZero);
      errs[k] = std::abs(perturbative_expectation(in, order) - noisy_expectation(in, solve_F(in)));
    }
    const double ratio = errs[0] / errs[1];
    EXPECT_NEAR(std::log2(ratio), order + 1, 0.3) << "order " << order;
  }
}

TEST(NoiseTheory, RejectsMalformedInputs) {
  auto in = toy_inputs(1, 1, 0.1, 1.0, 0.1, NoiseObservable::kIdentity);
  in.times[3] += 0.01;
  EXPECT_THROW(solve_F(in), ParameterError);
  in = toy_inputs(1, 1, -0.1, 1.0, 0.1, NoiseObservable::kIdentity);
  EXPECT_THROW(solve_F(in), ParameterError);
}

SpectralTabulation small_table() {
  SykParams p;
  p.n_majorana = 8;
  p.seed = 2;
  std::vector<SpectralTabulation> tables;
  for (int k = 0; k < 4; ++k) {
    tables.push_back(tabulate(SpectralDecomposition(sample_ensemble_member(p, k).hamiltonian()), 0.01, 101));
  }
  return average(tables);
}

TEST(NoiseTheory, TabulationMatchesExactEvolution) {
  SykParams p;
  p.n_majorana = 8;
  p.seed = 2;
  const auto h = sample_ensemble_member(p, 0).hamiltonian();
  const auto table = tabulate(SpectralDecomposition(h), 0.01, 101);
  EXPECT_NEAR(std::abs(table.loschmidt[50] - loschmidt_exact(h, 0.5)), 0.0, 1e-12);
  EXPECT_THROW(model_inputs(table, 0.505, 0.1, 1.0, NoiseObservable::kIdentity), ParameterError);
}

TEST(NoiseTheory, BetaFitRecoversNoiselessData) {
  const auto table = small_table();
  std::vector<BetaDataPoint> data;
  for (double t : {0.3, 0.5, 0.7, 1.0}) {
    data.push_back({t, predict_estimate(table, 1.7, 1.0, NoiseObservable::kProjectZero, t), 1e-3});
  }
  const auto fit = fit_beta(table, data, 0.5);
  EXPECT_NEAR(fit.beta, 1.7, 1e-6);
  EXPECT_LT(fit.chi2, 1e-6);
  EXPECT_EQ(fit.points, 4);
  EXPECT_NEAR(fit.stderr * fit.stderr, fit.covariance, 1e-15);
  data.resize(2);
  EXPECT_THROW(fit_beta(table, data), FitError);
}

TEST(NoiseTheory, ErrorsPerGate) { EXPECT_NEAR(errors_per_tq_gate(2.46, 0.5, 275), 0.002236, 1e-6); }

PauliHamiltonian syk(int n, std::uint64_t seed) {
  SykParams p;
  p.n_majorana = n;
  p.seed = seed;
  return sample_instance(p).hamiltonian();
}

TEST(Trotter, CommutingHamiltonianIsExact) {
  const PauliHamiltonian h(3, {{0.4, SignedPauliString::parse("ZZI")},
                               {-0.7, SignedPauliString::parse("IZZ")},
                               {0.2, SignedPauliString::parse("ZIZ")}});
  // |0> is an eigenstate; also check a non-trivial commuting set.
  const PauliHamiltonian g(2, {{0.4, SignedPauliString::parse("XX")}, {0.9, SignedPauliString::parse("ZZ")}});
  for (const auto* op : {&h, &g}) {
    const auto exact = loschmidt_exact(*op, 1.3);
    EXPECT_NEAR(std::abs(trotter_loschmidt(*op, 1.3, make_trotter_plan(*op, 1)) - exact), 0.0, 1e-12);
  }
}

TEST(Trotter, ConvergesToExactEvolution) {
  const auto h = syk(8, 3);
  const auto exact = loschmidt_exact(h, 1.0);
  double previous = 1.0;
  for (int s : {1, 4, 16, 64}) {
    const double err = std::abs(trotter_loschmidt(h, 1.0, make_trotter_plan(h, s)) - exact);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(Trotter, PlanGateCountMatchesTrace) {
  const auto h = syk(12, 5);
  const auto plan = make_trotter_plan(h, 3);
  std::int64_t per_step = 0;
  for (const auto& term : h.terms()) per_step += tq_gates_for_rotation(term.string);
  EXPECT_EQ(plan.tq_gate_count, 3 * per_step);
  StateVector s(h.num_qubits(), false);
  GateTrace trace;
  build_and_run(h, 0.5, plan, s, Control::kNone, &trace);
  EXPECT_EQ(static_cast<std::int64_t>(trace.size()), plan.tq_gate_count);
  EXPECT_THROW(make_trotter_plan(h, 0), ParameterError);
}

TEST(Trotter, RelativeErrorUndefinedAtZero) {
  EXPECT_FALSE(relative_error(0.1, 0.0).defined);
  EXPECT_NEAR(relative_error(1.1, 1.0).value, 0.1, 1e-15);
}

TEST(Trotter, TetrisCostFormula) {
  const auto h = syk(12, 5);
  const double tau = 0.2, t = 0.8;
  double mean_cost = 0;
  for (const auto& term : h.terms()) mean_cost += std::abs(term.coefficient) * tq_gates_for_rotation(term.string);
  mean_cost /= h.one_norm();
  EXPECT_NEAR(tetris_expected_tq(h, t, tau), t * h.one_norm() / std::sin(tau) * mean_cost, 1e-9);
}

TEST(Echo, ZeroTimeIsExact) {
  EchoSetup s;
  s.params.n_majorana = 8;
  s.time = 0.0;
  s.circuits = 50;
  s.angle = {AnglePolicy::Kind::kFixed, 1.0, 0.3};
  for (const auto kind : {AnglePolicy::Kind::kFixed, AnglePolicy::Kind::kOptimal}) {
    s.angle.kind = kind;
    const auto run = run_echo(s);
    for (EchoObservable o : kEchoObservables) EXPECT_DOUBLE_EQ(run.estimate(o).mean, 1.0);
    EXPECT_DOUBLE_EQ(run.exact_mean(), 1.0);
  }
}

TEST(Echo, NoiselessMitigationIsInert) {
  EchoSetup s;
  s.params.n_majorana = 8;
  s.instances = 4;
  s.time = 0.6;
  s.circuits = 200;
  s.shots_per_circuit = 0;
  const auto run = run_echo(s);
  for (const auto& c : run.circuits) EXPECT_NEAR(c.raw[1], c.raw[2], 1e-12);
  EXPECT_EQ(s.instance_of(6), 2u);
}

TEST(Echo, UnbiasedAtSmallScale) {
  EchoSetup s;
  s.params.n_majorana = 8;
  s.params.seed = 5;
  s.instances = 8;
  s.time = 0.5;
  s.circuits = 4000;
  s.circuit_seed = 17;
  const auto run = run_echo(s);
  for (EchoObservable o : kEchoObservables) {
    const auto r = run.estimate(o);
    EXPECT_LT(std::abs(r.mean - run.exact_mean()), 5 * r.stderr) << to_string(o);
  }
}

TEST(Echo, ValidatesSetup) {
  EchoSetup s;
  s.params.n_majorana = 36;
  s.time = 0.5;
  EXPECT_THROW(s.validate(), CapabilityError);
  s.params.n_majorana = 8;
  s.circuits = 0;
  EXPECT_THROW(s.validate(), ParameterError);
  s.circuits = 1;
  s.angle = {AnglePolicy::Kind::kFixed, 1.0, 2.0};
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Mirror, ZeroTimeAndNoiselessSurvival) {
  MirrorRunSpec spec;
  spec.params.n_majorana = 8;
  spec.instances = 4;
  spec.circuits = 40;
  spec.time = 0.0;
  EXPECT_DOUBLE_EQ(standard_mirror(spec).survival.mean, 1.0);
  EXPECT_DOUBLE_EQ(mirror_on_average(spec).survival.mean, 1.0);
  spec.time = 0.7;
  EXPECT_NEAR(standard_mirror(spec).survival.mean, 1.0, 1e-12);
}

TEST(Mirror, LocalObservableMatchesExact) {
  MirrorRunSpec spec;
  spec.params.n_majorana = 8;
  spec.params.seed = 3;
  spec.instances = 4;
  spec.circuits = 3000;
  spec.time = 0.7;
  spec.circuit_seed = 8;
  const auto r = mirror_on_average(spec);
  EXPECT_LT(std::abs(r.local_obs.mean - exact_local_observable(spec)), 5 * r.local_obs.stderr);
  EXPECT_DOUBLE_EQ(local_z_value(0, 4), 1.0);
  EXPECT_DOUBLE_EQ(local_z_value(0b0111, 4), -0.5);
}

TEST(Resources, ClosedForms) {
  ResourceQuery q;
  q.num_qubits = 50;
  const double jt = std::log(100.0);
  EXPECT_EQ(otoc_tq_count(q), std::llround(8 * 2.3 * jt * jt * 2500 * std::log(100.0) / std::log(3.0)));
  q.lyapunov_preset = false;
  q.jt = 2.0;
  EXPECT_EQ(otoc_tq_count(q), std::llround(8 * 2.3 * 4 * 2500 * std::log(100.0) / std::log(3.0)));
  EXPECT_EQ(parallel_factor(50), 14);
  EXPECT_EQ(parallel_factor(100), 23);
  q.parallel = true;
  const auto rt = runtime_estimate(q, 4000000);
  EXPECT_NEAR(rt.serial_s, 120000.0, 1e-6);
  EXPECT_NEAR(rt.parallel_s, 120000.0 / 14, 1e-6);
  EXPECT_EQ(rt.label, std::string(kEstimateLabel));
  q.num_qubits = 1;
  EXPECT_THROW(q.validate(), ParameterError);
}

TEST(Resources, RoundSignificant) {
  EXPECT_DOUBLE_EQ(round_significant(33.33), 30.0);
  EXPECT_DOUBLE_EQ(round_significant(2.38), 2.0);
  EXPECT_DOUBLE_EQ(round_significant(0.0456), 0.05);
  EXPECT_DOUBLE_EQ(round_significant(24910777, 2), 25000000.0);
  EXPECT_DOUBLE_EQ(round_significant(0.0), 0.0);
}

}  // namespace
}  // namespace tetrisyk
