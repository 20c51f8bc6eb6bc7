/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/scenario.hpp"

#include "qahybrid/algo_one.hpp"
#include "qahybrid/algo_two.hpp"
#include "qahybrid/kernels.hpp"
#include "qahybrid/rng.hpp"
#include "qahybrid/signal_model.hpp"

#include <algorithm>
#include <cmath>

using namespace qahybrid;

namespace
{

/// Truth parameters with run fractions converted to seconds
TruthParamsd TimedTruth(const ScenarioConfig& cfg)
{
  TruthParamsd t = cfg.truth;
  if (t.eta_x_step_time >= 0)
    t.eta_x_step_time *= cfg.Duration();
  return t;
}

double TurnOffset(const ScenarioConfig& cfg, double time)
{
  double off = 0;
  const double dur = cfg.Duration();
  for (const auto& turn : cfg.generation.turns)
  {
    if (time >= turn.start * dur && time < (turn.start + turn.duration) * dur)
      off += turn.accel_x;
  }
  return off;
}

void Allocate(CycleData& d, Eigen::Index n)
{
  d.inputs.resize(static_cast<std::size_t>(n));
  d.t.resize(n);
  d.a_true.resize(n);
  d.b_true.resize(n);
  d.contrast_true.resize(n);
  d.ca_residual.resize(n);
  for (auto& v : d.theta_true)
    v.setZero(n);
}

/// Interferometer readout and the estimator-side contrast model for one cycle
void CompleteCycle(const ScenarioConfig& cfg,
                   const InterferometerConfigd& assumed,
                   CycleData& d,
                   Eigen::Index i,
                   RandomStream& detection)
{
  CycleInputs& in = d.inputs[static_cast<std::size_t>(i)];
  const InterferometerConfigd& ifo = cfg.interferometer;
  const double contrast = ifo.sigma_v > 0 ? RotationContrast(ifo, in.omega_x, in.omega_y) : ifo.C0;
  d.contrast_true[i] = contrast;
  in.phi_control = NextControlPhase(cfg.modulation, static_cast<std::uint64_t>(i));
  const double noise = ifo.sigma_P > 0 ? detection.Normal(ifo.sigma_P) : 0.0;
  in.P = TransitionProbability(ifo, contrast, InterferometerPhase(ifo, d.a_true[i], in.phi_control), noise);
  in.contrast = cfg.estimator.contrast_correction ? RotationContrast(assumed, in.omega_x, in.omega_y) : std::nan("");
}

void FillTruthCoefficients(const ScenarioConfig& cfg, const TruthParamsd& truth, CycleData& d, Eigen::Index i,
                           bool filtered)
{
  const double time = d.t[i];
  auto set = [&](Coefficient c, double v) { d.theta_true[static_cast<std::size_t>(c)][i] = v; };
  set(Coefficient::EtaPrime, filtered ? truth.eta * truth.eta_prime : 0.0);
  set(Coefficient::EtaDoublePrime, filtered ? truth.eta * truth.eta_dprime : 0.0);
  set(Coefficient::EtaX, truth.EtaXAt(time));
  set(Coefficient::EtaY, truth.eta_y);
  set(Coefficient::VelocityX, truth.v_x0);
  set(Coefficient::VelocityY, truth.v_y0);
  (void)cfg;
}

double TruthCorrected(const TruthParamsd& truth, const CycleData& d, Eigen::Index i)
{
  const CycleInputs& in = d.inputs[static_cast<std::size_t>(i)];
  double a = truth.eta * in.a_ca + d.b_true[i];
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
    a += d.theta_true[j][i] * Regressor(in, static_cast<Coefficient>(j));
  return a;
}

CycleData GeneratePerCycle(const ScenarioConfig& cfg, std::uint64_t seed)
{
  const Eigen::Index n = cfg.generation.cycles;
  const TruthParamsd truth = TimedTruth(cfg);
  InterferometerConfigd assumed = cfg.interferometer;
  assumed.C0 = cfg.AssumedContrast();

  CycleData d;
  d.Tc = cfg.interferometer.Tc;
  Allocate(d, n);

  RandomStream accZ(seed, channel::kAccelZ), accX(seed, channel::kAccelX), accY(seed, channel::kAccelY);
  RandomStream omX(seed, channel::kOmegaX), omY(seed, channel::kOmegaY), omZ(seed, channel::kOmegaZ);
  RandomStream caNoise(seed, channel::kCaNoise), detection(seed, channel::kDetection);

  for (Eigen::Index i = 0; i < n; ++i)
  {
    CycleInputs& in = d.inputs[static_cast<std::size_t>(i)];
    const double time = static_cast<double>(i) * cfg.interferometer.Tc;
    d.t[i] = time;
    const double a = truth.sigma_a > 0 ? accZ.Normal(truth.sigma_a) : 0.0;
    in.a_x = (truth.sigma_ax > 0 ? accX.Normal(truth.sigma_ax) : 0.0) + TurnOffset(cfg, time);
    in.a_y = truth.sigma_ay > 0 ? accY.Normal(truth.sigma_ay) : 0.0;
    in.omega_x = truth.sigma_omega_x > 0 ? omX.Normal(truth.sigma_omega_x) : 0.0;
    in.omega_y = truth.sigma_omega_y > 0 ? omY.Normal(truth.sigma_omega_y) : 0.0;
    if (truth.sigma_omega_z > 0)
      omZ.Normal(truth.sigma_omega_z);
    d.b_true[i] = truth.BiasAt(time);
    const double delta = truth.sigma_delta_a > 0 ? caNoise.Normal(truth.sigma_delta_a) : 0.0;
    in.a_ca = (a - d.b_true[i]) / truth.eta + delta;

    const RotationStated rot{in.omega_x, in.omega_y, 0.0, truth.v_x0, truth.v_y0};
    d.a_true[i] = a + truth.EtaXAt(time) * in.a_x + truth.eta_y * in.a_y + CoriolisAcceleration(rot);
    FillTruthCoefficients(cfg, truth, d, i, false);
    d.ca_residual[i] = d.a_true[i] - TruthCorrected(truth, d, i);
    CompleteCycle(cfg, assumed, d, i, detection);
  }
  return d;
}

CycleData GenerateFromStream(const ScenarioConfig& cfg, std::uint64_t seed)
{
  const Eigen::Index n = cfg.generation.cycles;
  const double rate = cfg.generation.rate;
  const TruthParamsd truth = TimedTruth(cfg);
  InterferometerConfigd assumed = cfg.interferometer;
  assumed.C0 = cfg.AssumedContrast();

  const KernelSet kernels = BuildKernels(cfg.interferometer.T, rate);
  const auto perCycle = static_cast<Eigen::Index>(std::llround(cfg.interferometer.Tc * rate));
  const Eigen::Index samples = n * perCycle + kernels.Taps();

  StreamShape shape;
  shape.band_z = cfg.generation.band_z;
  shape.band_xy = cfg.generation.band_xy;
  shape.band_omega = cfg.generation.band_omega;
  const double streamDuration = static_cast<double>(samples) / rate;
  for (const auto& turn : cfg.generation.turns)
    shape.turns.push_back({turn.start * cfg.Duration(), turn.duration * cfg.Duration(), turn.accel_x});

  const SensorStream truthStream = GenTruthStream(truth, streamDuration, rate, seed, shape);
  const SensorStream ca = ApplyCaModel(truthStream, truth, {cfg.generation.ca_filter, seed});

  CycleData d;
  d.Tc = cfg.interferometer.Tc;
  Allocate(d, n);
  RandomStream detection(seed, channel::kDetection);

  for (Eigen::Index i = 0; i < n; ++i)
  {
    const Eigen::Index start = i * perCycle;
    const CycleInputs reference = CycleReduce(truthStream, kernels, start);
    CycleInputs in = CycleReduce(ca, kernels, start);
    in.a_x = reference.a_x;
    in.a_y = reference.a_y;
    in.omega_x = reference.omega_x;
    in.omega_y = reference.omega_y;
    d.inputs[static_cast<std::size_t>(i)] = in;

    const double time = truthStream.t[start + kernels.half];
    d.t[i] = time;
    d.b_true[i] = truth.BiasAt(time);
    const RotationStated rot{in.omega_x, in.omega_y, 0.0, truth.v_x0, truth.v_y0};
    d.a_true[i] = reference.a_ca + truth.EtaXAt(time) * in.a_x + truth.eta_y * in.a_y + CoriolisAcceleration(rot);
    FillTruthCoefficients(cfg, truth, d, i, cfg.generation.ca_filter);
    d.ca_residual[i] = d.a_true[i] - TruthCorrected(truth, d, i);
    CompleteCycle(cfg, assumed, d, i, detection);
  }
  return d;
}

double FinalMean(const Eigen::VectorXd& x, double start_fraction)
{
  const auto start = static_cast<Eigen::Index>(start_fraction * static_cast<double>(x.size()));
  const Eigen::Index len = x.size() - start;
  return len > 0 ? x.tail(len).mean() : std::nan("");
}

void Summarize(const ScenarioConfig& cfg, const CycleData& data, AlgoRun& run, double loop_time)
{
  AlgoSummary& s = run.summary;
  const AlgoTrace& tr = run.trace;
  const Eigen::Index n = data.Size();
  const double Tc = cfg.interferometer.Tc;
  const AnalysisConfig& an = cfg.analysis;

  s.loop_time = loop_time;
  s.diverged = ClassifyConvergence(tr.b_hat, data.b_true, FringeSpacing(cfg.interferometer)) == Convergence::Diverged;

  const Eigen::VectorXd bias = tr.b_hat;
  const bool finite = bias.allFinite();
  if (finite)
  {
    s.allan = AllanDeviation(bias, Tc, 4);
    const double tauMax = static_cast<double>(n) * Tc / static_cast<double>(an.max_tau_divisor);
    double tauMin = an.fit_start_loops * loop_time;
    int inRange = 0;
    for (double tau : s.allan.taus)
      inRange += (tau >= tauMin * (1 - 1e-12) && tau <= tauMax * (1 + 1e-12)) ? 1 : 0;
    if (inRange < 3)
    {
      // fall back to the three longest taus within the fit ceiling
      std::vector<double> eligible;
      for (double tau : s.allan.taus)
        if (tau <= tauMax * (1 + 1e-12))
          eligible.push_back(tau);
      tauMin = eligible.size() >= 3 ? eligible[eligible.size() - 3] : 0.0;
      s.fit_clipped = true;
    }
    s.level_1cycle = FitWhiteLevel(s.allan, tauMin, tauMax);
    s.slope = LogLogSlope(s.allan, tauMin, tauMax);
    s.allan.fit_level = s.level_1cycle;
  }
  else
  {
    s.level_1cycle = s.slope = std::nan("");
  }
  s.level_1s = s.level_1cycle * std::sqrt(Tc);

  long dropped = 0;
  for (char c : tr.dropped)
    dropped += c ? 1 : 0;
  s.dropped_fraction = static_cast<double>(dropped) / static_cast<double>(n);

  const auto resStart = static_cast<Eigen::Index>(an.residual_start * static_cast<double>(n));
  try
  {
    s.residual_std = ResidualStd(tr.a_q_hat.tail(n - resStart), tr.a_c_hat.tail(n - resStart));
  }
  catch (const AnalysisError&)
  {
    s.residual_std = std::nan("");
  }

  const Eigen::VectorXd extraction = tr.a_q_hat - data.a_true;
  try
  {
    s.extraction_level = WhiteLevelOfSeries(extraction, Tc, Tc);
  }
  catch (const AnalysisError&)
  {
    s.extraction_level = std::nan("");
  }
  s.ca_noise_level = WhiteLevelOfSeries(data.ca_residual, Tc, Tc);

  const Eigen::VectorXd bErr = tr.b_hat - data.b_true;
  s.b_error_final = FinalMean(bErr, an.average_start);
  s.eta_final = FinalMean(tr.eta_hat, an.average_start);
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    s.theta_final[j] = FinalMean(tr.theta.col(static_cast<Eigen::Index>(j)), an.average_start);
    s.theta_truth_final[j] = data.theta_true[j][n - 1];
  }
  s.kink = finite ? MaxMovingAverage(bErr, std::min<Eigen::Index>(an.kink_window, n / 4), n / 2, n) : std::nan("");
}

void Reserve(AlgoTrace& tr, Eigen::Index n, bool nd)
{
  tr.a_q_hat.resize(n);
  tr.a_c_hat.resize(n);
  tr.b_hat.resize(n);
  tr.eta_hat.resize(n);
  tr.theta.resize(n, static_cast<Eigen::Index>(kNumCoefficients));
  tr.dropped.assign(static_cast<std::size_t>(n), 0);
  if (nd)
  {
    tr.N.setZero(n);
    tr.D.setZero(n);
  }
}

void RecordState(AlgoTrace& tr, Eigen::Index i, const EstimatorState& s)
{
  tr.b_hat[i] = s.b_hat;
  tr.eta_hat[i] = s.eta_hat;
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
    tr.theta(i, static_cast<Eigen::Index>(j)) = s.theta[j];
}

} // namespace

CycleData qahybrid::GenerateCycles(const ScenarioConfig& cfg, std::uint64_t seed)
{
  return cfg.generation.mode == GenerationMode::Stream ? GenerateFromStream(cfg, seed) : GeneratePerCycle(cfg, seed);
}

AlgoRun qahybrid::RunAlgorithm(const ScenarioConfig& cfg, const CycleData& data, Algorithm algo, std::uint64_t seed)
{
  AlgoRun run;
  run.summary.algo = algo;
  run.summary.seed = seed;
  const Eigen::Index n = data.Size();
  AlgoTrace& tr = run.trace;
  Reserve(tr, n, algo == Algorithm::Two);

  double loopTime = 0;
  if (algo == Algorithm::One)
  {
    AlgoOne est(cfg.interferometer, cfg.OneOptions(), cfg.InitialState());
    for (Eigen::Index i = 0; i < n; ++i)
    {
      const AlgoOneStep st = est.Step(data.inputs[static_cast<std::size_t>(i)]);
      tr.a_q_hat[i] = st.a_q_hat;
      tr.a_c_hat[i] = st.a_c_hat;
      tr.dropped[static_cast<std::size_t>(i)] = st.dropped ? 1 : 0;
      RecordState(tr, i, est.State());
    }
    loopTime = est.LoopTime();
  }
  else
  {
    const AlgoOneOptions extractOpts = cfg.OneOptions();
    AlgoTwo est(cfg.interferometer, cfg.TwoOptions(), cfg.InitialState());
    for (Eigen::Index i = 0; i < n; ++i)
    {
      const CycleInputs& in = data.inputs[static_cast<std::size_t>(i)];
      const AlgoTwoStep st = est.Step(in);
      tr.a_c_hat[i] = st.a_c_hat;
      tr.N[i] = st.N;
      tr.D[i] = st.D;
      // direct extraction around this estimator's prediction, for the residual figure of merit
      const double C = (extractOpts.contrast_correction && std::isfinite(in.contrast)) ? in.contrast
                                                                                        : extractOpts.C_used;
      const auto aq = ExtractAcceleration(cfg.interferometer, in.P, in.phi_control, st.a_c_hat, C,
                                          extractOpts.P0_used, extractOpts.branch_window);
      tr.a_q_hat[i] = aq ? *aq : std::nan("");
      tr.dropped[static_cast<std::size_t>(i)] = aq ? 0 : 1;
      RecordState(tr, i, est.State());
    }
    loopTime = est.LoopTime(cfg.interferometer.C0);
  }
  Summarize(cfg, data, run, loopTime);
  return run;
}

SeedRun qahybrid::RunSeed(const ScenarioConfig& cfg, std::uint64_t seed)
{
  SeedRun out;
  out.seed = seed;
  out.data = GenerateCycles(cfg, seed);
  if (cfg.run_one)
    out.runs.push_back(RunAlgorithm(cfg, out.data, Algorithm::One, seed));
  if (cfg.run_two)
    out.runs.push_back(RunAlgorithm(cfg, out.data, Algorithm::Two, seed));
  return out;
}

AggregateSummary qahybrid::Aggregate(const std::vector<AlgoSummary>& per_seed)
{
  AggregateSummary a;
  if (per_seed.empty())
    return a;
  a.algo = per_seed.front().algo;
  a.seeds = static_cast<long>(per_seed.size());
  std::vector<const AlgoSummary*> ok;
  for (const auto& s : per_seed)
  {
    if (s.diverged)
      ++a.diverged_seeds;
    else
      ok.push_back(&s);
  }
  a.diverged = 2 * a.diverged_seeds > a.seeds;

  auto med = [&](auto field) {
    std::vector<double> v;
    for (const AlgoSummary* s : ok)
      v.push_back(field(*s));
    return Median(v);
  };
  auto mad = [&](auto field) {
    std::vector<double> v;
    for (const AlgoSummary* s : ok)
      v.push_back(field(*s));
    return v.empty() ? std::nan("") : MedianAbsDeviation(v);
  };
  a.level_1cycle = med([](const AlgoSummary& s) { return s.level_1cycle; });
  a.level_1cycle_mad = mad([](const AlgoSummary& s) { return s.level_1cycle; });
  a.level_1s = med([](const AlgoSummary& s) { return s.level_1s; });
  a.slope = med([](const AlgoSummary& s) { return s.slope; });
  a.loop_time = med([](const AlgoSummary& s) { return s.loop_time; });
  a.residual_std = med([](const AlgoSummary& s) { return s.residual_std; });
  a.dropped_fraction = med([](const AlgoSummary& s) { return s.dropped_fraction; });
  a.extraction_level = med([](const AlgoSummary& s) { return s.extraction_level; });
  a.ca_noise_level = med([](const AlgoSummary& s) { return s.ca_noise_level; });
  a.b_error_final = med([](const AlgoSummary& s) { return s.b_error_final; });
  a.eta_final = med([](const AlgoSummary& s) { return s.eta_final; });
  a.kink = med([](const AlgoSummary& s) { return s.kink; });
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
    a.theta_final[j] = med([j](const AlgoSummary& s) { return s.theta_final[j]; });

  if (!ok.empty())
  {
    a.allan = ok.front()->allan;
    a.allan.fit_level = a.level_1cycle;
    for (std::size_t k = 0; k < a.allan.taus.size(); ++k)
    {
      std::vector<double> v;
      for (const AlgoSummary* s : ok)
        if (k < s->allan.sigma.size())
          v.push_back(s->allan.sigma[k]);
      a.allan.sigma[k] = Median(v);
    }
  }
  return a;
}

AnalyticLimits qahybrid::ComputeLimits(const ScenarioConfig& cfg)
{
  const InterferometerConfigd& ifo = cfg.interferometer;
  const TruthParamsd& t = cfg.truth;
  const double kT2 = ifo.ScaleFactor();
  AnalyticLimits l;
  l.T = ifo.T;
  l.detection_1cycle = 2 * std::sqrt(2.0) * ifo.sigma_P / (ifo.C0 * kT2);
  l.detection_1s = l.detection_1cycle * std::sqrt(ifo.Tc);
  l.coriolis_1cycle = 2 * std::hypot(t.v_x0 * t.sigma_omega_y, t.v_y0 * t.sigma_omega_x);
  const double omega2 = t.sigma_omega_x * t.sigma_omega_x + t.sigma_omega_y * t.sigma_omega_y;
  l.contrast_1s = 2 * std::sqrt(3.0) * kT2 * ifo.sigma_v * ifo.sigma_v * omega2 * std::sqrt(ifo.Tc);
  double noiseGain = 1.0;
  if (cfg.generation.mode == GenerationMode::Stream)
  {
    const KernelSet k = BuildKernels(ifo.T, cfg.generation.rate);
    noiseGain = k.g.norm();
  }
  l.ca_noise_1cycle = t.eta * t.sigma_delta_a * noiseGain;
  return l;
}

double qahybrid::MaxMovingAverage(const Eigen::VectorXd& x, Eigen::Index window, Eigen::Index begin, Eigen::Index end)
{
  begin = std::max<Eigen::Index>(0, begin);
  end = std::min(end, x.size());
  if (window < 1 || end - begin < window)
    return std::nan("");
  double sum = x.segment(begin, window).sum();
  double best = std::abs(sum);
  for (Eigen::Index i = begin + window; i < end; ++i)
  {
    sum += x[i] - x[i - window];
    best = std::max(best, std::abs(sum));
  }
  return best / static_cast<double>(window);
}
