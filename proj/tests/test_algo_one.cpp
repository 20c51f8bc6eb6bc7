/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/algo_one.hpp"
#include "qahybrid/analysis.hpp"
#include "qahybrid/config.hpp"
#include "qahybrid/rng.hpp"
#include "qahybrid/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace qahybrid;

namespace
{
constexpr double kPi = std::numbers::pi;

InterferometerConfigd Nominal()
{
  return InterferometerConfigd{};
}

AlgoOneOptions NoWarmup()
{
  AlgoOneOptions o;
  o.warmup_cycles = 0;
  return o;
}

/// Probability for a true acceleration, no noise
double ProbabilityFor(const InterferometerConfigd& cfg, double a_true, double phi, double C)
{
  return TransitionProbability(cfg, C, InterferometerPhase(cfg, a_true, phi), 0.0);
}

EstimatorState TruthState()
{
  EstimatorState s;
  s.b_hat = 2e-5;
  s.eta_hat = 1.001;
  s.Theta(Coefficient::EtaPrime) = 5.002e-4;
  s.Theta(Coefficient::EtaX) = -6.5e-4;
  s.Theta(Coefficient::VelocityX) = 2e-3;
  for (auto c : {Coefficient::EtaPrime, Coefficient::EtaX, Coefficient::VelocityX})
    s.mode[static_cast<std::size_t>(c)] = CoefficientMode::Estimated;
  return s;
}
} // namespace

TEST(CorrectedClassical, Examples)
{
  EstimatorState s;
  CycleInputs in;
  in.a_ca = 0.42;
  EXPECT_EQ(CorrectedClassical(s, in), 0.42);

  s.b_hat = 2e-5;
  s.eta_hat = 1.001;
  in.a_ca = 1;
  EXPECT_NEAR(CorrectedClassical(s, in), 1.00102, 1e-15);

  EstimatorState x;
  x.Theta(Coefficient::EtaX) = -6.5e-4;
  x.mode[static_cast<std::size_t>(Coefficient::EtaX)] = CoefficientMode::Fixed;
  CycleInputs inx;
  inx.a_x = 0.1;
  EXPECT_NEAR(CorrectedClassical(x, inx), -6.5e-5, 1e-18);
  x.mode[static_cast<std::size_t>(Coefficient::EtaX)] = CoefficientMode::Off;
  EXPECT_EQ(CorrectedClassical(x, inx), 0.0);
}

TEST(CorrectedClassical, CoriolisRegressors)
{
  EstimatorState s;
  s.Theta(Coefficient::VelocityX) = 2e-3;
  s.Theta(Coefficient::VelocityY) = 2e-3;
  s.mode[static_cast<std::size_t>(Coefficient::VelocityX)] = CoefficientMode::Fixed;
  s.mode[static_cast<std::size_t>(Coefficient::VelocityY)] = CoefficientMode::Fixed;
  CycleInputs in;
  in.omega_y = 13e-3;
  in.omega_x = 5e-3;
  EXPECT_NEAR(CorrectedClassical(s, in), CoriolisAcceleration(RotationStated{5e-3, 13e-3, 0, 2e-3, 2e-3}), 1e-18);
}

TEST(Extraction, MidFringe)
{
  const auto cfg = Nominal();
  const double L = FringeSpacing(cfg);
  const auto a = ExtractAcceleration(cfg, 0.5, 0.0, 0.9 * L / 4, 0.23, 0.5);
  ASSERT_TRUE(a.has_value());
  EXPECT_NEAR(*a, L / 4, 1e-16);
  // the other branch when the estimate sits just below -L/4
  const auto b = ExtractAcceleration(cfg, 0.5, 0.0, -0.9 * L / 4, 0.23, 0.5);
  EXPECT_NEAR(*b, -L / 4, 1e-16);
}

TEST(Extraction, FringeBottom)
{
  const auto cfg = Nominal();
  const auto a = ExtractAcceleration(cfg, 0.5 - 0.115, 0.0, 1e-6, 0.23, 0.5);
  ASSERT_TRUE(a.has_value());
  // 2 (P0 - P) / C rounds to just below 1 and acos amplifies that to ~1e-8 rad
  EXPECT_NEAR(*a, 0.0, 1e-11);
  // with a representable argument of exactly 1 the result is exactly zero
  const auto exact = ExtractAcceleration(cfg, 0.375, 0.0, 1e-6, 0.25, 0.5);
  ASSERT_TRUE(exact.has_value());
  EXPECT_EQ(*exact, 0.0);
}

TEST(Extraction, OutOfDomainDropped)
{
  const auto cfg = Nominal();
  // |2 (P0 - P) / C| = 1.2
  EXPECT_FALSE(ExtractAcceleration(cfg, 0.5 - 1.2 * 0.115, 0.0, 0.0, 0.23, 0.5).has_value());
  EXPECT_FALSE(ExtractAcceleration(cfg, 0.5 + 1.2 * 0.115, 0.0, 0.0, 0.23, 0.5).has_value());
}

TEST(Extraction, BranchWindowClamp)
{
  const auto cfg = Nominal();
  const double L = FringeSpacing(cfg);
  // true value 8 fringes away: the search stops 5 fringes out
  const double P = ProbabilityFor(cfg, 8 * L + 0.1 * L, 0.0, 0.23);
  const auto a = ExtractAcceleration(cfg, P, 0.0, 0.0, 0.23, 0.5, 5);
  ASSERT_TRUE(a.has_value());
  EXPECT_LE(std::abs(*a), 5.5 * L);
}

TEST(Extraction, NoBranchSlipBelowQuarterFringe)
{
  const auto cfg = Nominal();
  const double L = FringeSpacing(cfg);
  const double kT2 = cfg.ScaleFactor();
  RandomStream rs(17, 0);
  int mirrored = 0;
  for (int i = 0; i < 20000; ++i)
  {
    const double a = 2 * rs.Uniform() - 1;
    const double phi = 2 * kPi * rs.Uniform() - kPi;
    const double err = (2 * rs.Uniform() - 1) * 0.249 * L;
    const double P = ProbabilityFor(cfg, a, phi, 0.23);
    const auto got = ExtractAcceleration(cfg, P, phi, a + err, 0.23, 0.5);
    ASSERT_TRUE(got.has_value());
    // never a whole fringe away
    ASSERT_LT(std::abs(*got - a), L / 2) << "draw " << i;
    // the cosine is even about each fringe extremum: the mirrored solution wins only
    // when the estimate error exceeds the distance to that extremum
    const double phase = kT2 * a + phi;
    const double extremum = kPi * std::round(phase / kPi);
    if (std::abs(err * kT2) < std::abs(phase - extremum) * (1 - 1e-9))
    {
      // acos conditioning near the fringe extrema limits the attainable precision
      ASSERT_NEAR(*got, a, 1e-11) << "draw " << i;
    }
    else if (std::abs(*got - a) > 1e-11)
    {
      ASSERT_NEAR(*got, (2 * extremum - phase - phi) / kT2, 1e-11) << "draw " << i;
      ++mirrored;
    }
  }
  EXPECT_GT(mirrored, 0);
}

TEST(AlgoOne, ZeroErrorLeavesEstimatesUnchanged)
{
  const auto cfg = Nominal();
  const EstimatorState init = TruthState();
  AlgoOne algo(cfg, NoWarmup(), init);
  RandomStream rs(3, 0);
  for (int i = 0; i < 500; ++i)
  {
    CycleInputs in;
    in.a_ca = rs.Normal(0.38);
    in.a_prime = rs.Normal(5.0);
    in.a_x = rs.Normal(0.05);
    in.omega_y = rs.Normal(13e-3);
    in.phi_control = 2 * kPi * rs.Uniform();
    in.P = ProbabilityFor(cfg, CorrectedClassical(init, in), in.phi_control, 0.23);
    const auto step = algo.Step(in);
    ASSERT_FALSE(step.dropped);
    ASSERT_EQ(step.a_q_hat, step.a_c_hat);
  }
  EXPECT_EQ(algo.State().b_hat, init.b_hat);
  EXPECT_EQ(algo.State().eta_hat, init.eta_hat);
  EXPECT_EQ(algo.State().theta, init.theta);
}

TEST(AlgoOne, BiasIncrement)
{
  const auto cfg = Nominal();
  AlgoOneOptions opts = NoWarmup();
  opts.gain_b = 0.2;
  AlgoOne algo(cfg, opts, EstimatorState{});
  CycleInputs in;
  in.a_ca = 0;
  in.phi_control = kPi / 2;
  in.P = ProbabilityFor(cfg, 1e-4, in.phi_control, 0.23);
  const auto step = algo.Step(in);
  EXPECT_NEAR(step.a_q_hat - step.a_c_hat, 1e-4, 1e-15);
  EXPECT_NEAR(algo.State().b_hat, 2e-5, 1e-16);
  EXPECT_EQ(algo.State().eta_hat, 1.0); // zero regressor
}

TEST(AlgoOne, WarmupDefersScaleUpdates)
{
  const auto cfg = Nominal();
  AlgoOneOptions opts;
  opts.warmup_cycles = 5;
  AlgoOne algo(cfg, opts, EstimatorState{});
  for (int i = 0; i < 5; ++i)
  {
    CycleInputs in;
    in.a_ca = 0.3;
    in.phi_control = kPi / 2;
    in.P = ProbabilityFor(cfg, 0.3 * 1.001, in.phi_control, 0.23);
    const double before = algo.State().eta_hat;
    const double b_before = algo.State().b_hat;
    algo.Step(in);
    if (i < 4)
      EXPECT_EQ(algo.State().eta_hat, before);
    else
      EXPECT_NE(algo.State().eta_hat, before);
    EXPECT_NE(algo.State().b_hat, b_before);
  }
}

TEST(AlgoOne, FixedPointIsExact)
{
  const auto cfg = Nominal();
  const EstimatorState truth = TruthState();
  for (auto reg : {ScaleRegularization::PseudoInverse, ScaleRegularization::Direct})
  {
    AlgoOneOptions opts = NoWarmup();
    opts.regularization = reg;
    AlgoOne algo(cfg, opts, truth);
    RandomStream rs(5, 1);
    for (int i = 0; i < 2000; ++i)
    {
      CycleInputs in;
      in.a_ca = rs.Normal(0.38);
      in.a_prime = rs.Normal(3.0);
      in.a_x = rs.Normal(0.05);
      in.omega_y = rs.Normal(13e-3);
      in.phi_control = (i % 3 - 1) * kPi / 2;
      in.P = ProbabilityFor(cfg, CorrectedClassical(truth, in), in.phi_control, opts.C_used);
      algo.Step(in);
    }
    EXPECT_EQ(algo.State().b_hat, truth.b_hat);
    EXPECT_EQ(algo.State().eta_hat, truth.eta_hat);
    EXPECT_EQ(algo.State().theta, truth.theta);
  }
}

TEST(AlgoOne, ScaleUpdateBounded)
{
  const auto cfg = Nominal();
  AlgoOneOptions opts = NoWarmup();
  AlgoOne algo(cfg, opts, EstimatorState{});
  RandomStream rs(8, 0);
  for (int i = 0; i < 3000; ++i)
  {
    CycleInputs in;
    in.a_ca = rs.Normal(0.38) * (i % 7 == 0 ? 5 : 1);
    in.phi_control = (i % 3 - 1) * kPi / 2;
    in.P = ProbabilityFor(cfg, 1.001 * in.a_ca + 2e-5, in.phi_control, 0.23) + rs.Normal(0.016);
    const double before = algo.State().eta_hat;
    const auto step = algo.Step(in);
    if (step.dropped)
      continue;
    const double e = step.a_q_hat - step.a_c_hat;
    const double sigma = std::sqrt(algo.State().var_scale);
    ASSERT_LE(std::abs(algo.State().eta_hat - before), opts.gain_eta * std::abs(e) / (2 * sigma) + 1e-15);
  }
}

TEST(AlgoOne, EnsembleConvergence)
{
  // eta_hat exact, bias error of an eighth of a fringe
  const auto cfg = Nominal();
  const double L = FringeSpacing(cfg);
  const double b_true = 2e-5;
  const double initial_error = L / 8;
  AlgoOneOptions opts;
  const int loops = 10;
  const int cycles = static_cast<int>(std::ceil(loops / opts.gain_b));
  const int seeds = 200;
  std::vector<double> mean_err(cycles + 1, 0.0);
  for (int seed = 0; seed < seeds; ++seed)
  {
    EstimatorState init;
    init.eta_hat = 1.001;
    init.b_hat = b_true - initial_error;
    AlgoOne algo(cfg, opts, init);
    RandomStream rs(static_cast<std::uint64_t>(seed), 0);
    mean_err[0] += algo.State().b_hat - b_true;
    for (int i = 0; i < cycles; ++i)
    {
      CycleInputs in;
      const double a = rs.Normal(0.38);
      in.a_ca = (a - b_true) / 1.001 + rs.Normal(4.8e-5);
      in.phi_control = (i % 3 - 1) * kPi / 2;
      in.P = ProbabilityFor(cfg, a, in.phi_control, 0.23) + rs.Normal(0.016);
      algo.Step(in);
      mean_err[i + 1] += algo.State().b_hat - b_true;
    }
  }
  for (double& m : mean_err)
    m /= seeds;
  const int tau = static_cast<int>(std::ceil(1 / opts.gain_b));
  EXPECT_LT(std::abs(mean_err[tau]), std::abs(mean_err[0]));
  EXPECT_LT(std::abs(mean_err[3 * tau]), std::abs(mean_err[tau]));
  EXPECT_LT(std::abs(mean_err[cycles]), 0.1 * initial_error);
}

TEST(AlgoOne, DroppedFractionGrowsWithDetectionNoise)
{
  const auto cfg = Nominal();
  double prev = -1;
  for (double sigma_P : {0.0, 0.02, 0.05, 0.1})
  {
    long dropped = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed)
    {
      AlgoOne algo(cfg, AlgoOneOptions{}, EstimatorState{});
      RandomStream rs(seed, 2);
      for (int i = 0; i < 5000; ++i)
      {
        CycleInputs in;
        const double a = rs.Normal(0.38);
        in.a_ca = a;
        in.phi_control = (i % 3 - 1) * kPi / 2;
        in.P = ProbabilityFor(cfg, a, in.phi_control, 0.23) + rs.Normal(sigma_P);
        algo.Step(in);
      }
      dropped += algo.State().dropped_count;
      total += 5000;
    }
    const double frac = static_cast<double>(dropped) / static_cast<double>(total);
    if (sigma_P == 0)
      EXPECT_EQ(frac, 0.0);
    EXPECT_GT(frac, prev);
    prev = frac;
  }
}

TEST(AlgoOne, ContrastCorrectionWithoutRotation)
{
  const auto cfg = Nominal();
  AlgoOneOptions plain;
  AlgoOneOptions corrected;
  corrected.contrast_correction = true;
  AlgoOne a(cfg, plain, EstimatorState{}), b(cfg, corrected, EstimatorState{});
  RandomStream rs(21, 0);
  for (int i = 0; i < 2000; ++i)
  {
    CycleInputs in;
    const double acc = rs.Normal(0.38);
    in.a_ca = (acc - 2e-5) / 1.001;
    in.phi_control = (i % 3 - 1) * kPi / 2;
    in.P = ProbabilityFor(cfg, acc, in.phi_control, 0.23) + rs.Normal(0.016);
    in.contrast = RotationContrast(cfg, 0.0, 0.0);
    const auto sa = a.Step(in);
    const auto sb = b.Step(in);
    ASSERT_EQ(sa.dropped, sb.dropped);
    if (!sa.dropped)
      ASSERT_EQ(sa.a_q_hat, sb.a_q_hat);
  }
  EXPECT_EQ(a.State().b_hat, b.State().b_hat);
  EXPECT_EQ(a.State().eta_hat, b.State().eta_hat);
}

TEST(AlgoOne, VanishingContrastDropsAlmostEverything)
{
  const auto cfg = Nominal();
  AlgoOneOptions opts;
  opts.contrast_correction = true;
  AlgoOne algo(cfg, opts, EstimatorState{});
  RandomStream rs(2, 0);
  const int n = 5000;
  for (int i = 0; i < n; ++i)
  {
    CycleInputs in;
    in.a_ca = rs.Normal(0.38);
    in.contrast = 1e-4;
    in.P = ProbabilityFor(cfg, in.a_ca, 0.0, in.contrast) + rs.Normal(0.016);
    algo.Step(in);
  }
  EXPECT_GT(static_cast<double>(algo.State().dropped_count) / n, 0.99);
}

TEST(AlgoOne, RejectsNonFiniteInput)
{
  AlgoOne algo(Nominal(), AlgoOneOptions{}, EstimatorState{});
  CycleInputs in;
  in.P = std::nan("");
  EXPECT_THROW(algo.Step(in), std::invalid_argument);
}

TEST(AlgoOne, ClosedLoopRecovery)
{
  ScenarioConfig cfg = LoadConfigFile(PresetPath("fig1"));
  cfg.run_two = false;
  const auto data = GenerateCycles(cfg, 1);
  const auto run = RunAlgorithm(cfg, data, Algorithm::One, 1);
  ASSERT_FALSE(run.summary.diverged);
  const Eigen::Index n = data.Size();
  const Eigen::Index h = n / 2;
  const double loop = run.summary.loop_time;
  for (const auto* series : {&run.trace.b_hat, &run.trace.eta_hat})
  {
    const Eigen::VectorXd tail = series->tail(n - h);
    const double mean = tail.mean();
    const double level = WhiteLevelOfSeries(tail, cfg.interferometer.Tc, 5 * loop);
    const double sigma = level / std::sqrt(static_cast<double>(n - h));
    const double truth = series == &run.trace.b_hat ? cfg.truth.b : cfg.truth.eta;
    EXPECT_LT(std::abs(mean - truth), 3 * sigma) << "mean " << mean << " sigma " << sigma;
  }
}
