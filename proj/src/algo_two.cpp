/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/algo_two.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace qahybrid;

double qahybrid::NextControlPhase(const ModulationSchedule& sched, std::uint64_t i)
{
  switch (sched.mode)
  {
    case ModulationMode::None:
      return 0.0;
    case ModulationMode::ThreeStep:
    {
      constexpr double kSteps[3] = {std::numbers::pi / 2, 0.0, -std::numbers::pi / 2};
      return sched.amplitude * kSteps[i % 3];
    }
    case ModulationMode::UniformRandom:
    {
      // two uniforms per counter block
      RandomStream rs(sched.seed, channel::kModulation, i / 2);
      double u = rs.Uniform();
      if (i % 2 == 1)
        u = rs.Uniform();
      return 2 * std::numbers::pi * u;
    }
  }
  return 0.0;
}

void TripletBuffer::Push(const CycleInputs& in, double phase_hat, double scale)
{
  cycles[0] = cycles[1];
  cycles[1] = cycles[2];
  cycles[2] = in;
  phase[0] = phase[1];
  phase[1] = phase[2];
  phase[2] = phase_hat;
  contrast_scale[0] = contrast_scale[1];
  contrast_scale[1] = contrast_scale[2];
  contrast_scale[2] = scale;
  if (count < 3)
    ++count;
}

namespace
{
struct Trig
{
  double c[3];
  double s[3];
};

Trig ModelTerms(const TripletBuffer& buf)
{
  Trig t{};
  for (int j = 0; j < 3; ++j)
  {
    t.c[j] = buf.contrast_scale[j] * std::cos(buf.phase[j]);
    t.s[j] = buf.contrast_scale[j] * std::sin(buf.phase[j]);
  }
  return t;
}
} // namespace

NDPair qahybrid::ComputeND(const TripletBuffer& buf)
{
  const Trig t = ModelTerms(buf);
  const double P0 = buf.cycles[0].P, P1 = buf.cycles[1].P, P2 = buf.cycles[2].P;
  NDPair nd;
  nd.N = (P0 - P1) * (t.c[2] - t.c[1]) - (P2 - P1) * (t.c[0] - t.c[1]);
  nd.D = (t.s[0] - t.s[1]) * (t.c[2] - t.c[1]) - (t.s[2] - t.s[1]) * (t.c[0] - t.c[1]);
  return nd;
}

double qahybrid::ComputeWeightedD(const TripletBuffer& buf, const std::array<double, 3>& x, ScaleRegressorForm form)
{
  const Trig t = ModelTerms(buf);
  if (form == ScaleRegressorForm::Sine)
  {
    return (x[0] * t.s[0] - x[1] * t.s[1]) * (t.c[2] - t.c[1]) -
           (x[2] * t.s[2] - x[1] * t.s[1]) * (t.c[0] - t.c[1]);
  }
  return (t.s[0] - t.s[1]) * (x[2] * t.c[2] - x[1] * t.c[1]) - (t.s[2] - t.s[1]) * (x[0] * t.c[0] - x[1] * t.c[1]);
}

AlgoTwo::AlgoTwo(const InterferometerConfigd& cfg, const AlgoTwoOptions& opts, const EstimatorState& initial)
  : m_cfg(cfg), m_opts(opts), m_state(initial), m_alpha(cfg.Tc / opts.average_time)
{
  if (!(opts.average_time > 0))
    throw std::invalid_argument("average time must be positive");
  if (opts.contrast_correction && !(opts.contrast_reference > 0))
    throw std::invalid_argument("contrast reference must be positive");
}

double AlgoTwo::ContrastScale(const CycleInputs& in) const
{
  if (m_opts.contrast_correction && std::isfinite(in.contrast))
    return in.contrast / m_opts.contrast_reference;
  return 1.0;
}

AlgoTwoStep AlgoTwo::Step(const CycleInputs& in)
{
  if (!in.Finite())
    throw std::invalid_argument("non-finite cycle inputs");

  AlgoTwoStep out;
  EstimatorState& s = m_state;
  out.a_c_hat = CorrectedClassical(s, in);
  const double kT2 = m_cfg.ScaleFactor();
  m_buf.Push(in, kT2 * out.a_c_hat + in.phi_control, ContrastScale(in));
  if (!m_buf.Full())
    return out;

  const NDPair nd = ComputeND(m_buf);
  out.N = nd.N;
  out.D = nd.D;
  out.updated = true;

  auto triplet = [&](auto&& f) {
    return std::array<double, 3>{f(m_buf.cycles[0]), f(m_buf.cycles[1]), f(m_buf.cycles[2])};
  };
  const double Dscale =
      ComputeWeightedD(m_buf, triplet([](const CycleInputs& c) { return c.a_ca; }), m_opts.scale_form);
  std::array<double, kNumCoefficients> Dtheta{};
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    const auto coef = static_cast<Coefficient>(j);
    if (s.mode[j] == CoefficientMode::Estimated)
      Dtheta[j] = ComputeWeightedD(m_buf, triplet([coef](const CycleInputs& c) { return Regressor(c, coef); }),
                                   m_opts.scale_form);
  }

  ++s.var_count;
  const double w = std::max(m_alpha, 1.0 / static_cast<double>(s.var_count));
  s.var_bias += w * (nd.D * nd.D - s.var_bias);
  s.var_scale += w * (Dscale * Dscale - s.var_scale);
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
    s.var_theta[j] += w * (Dtheta[j] * Dtheta[j] - s.var_theta[j]);
  if (s.var_count < m_opts.warmup_cycles)
  {
    out.updated = false;
    return out;
  }

  const double denB = nd.D * nd.D + s.var_bias;
  if (denB > 0)
  {
    s.b_hat += m_opts.gain_b / kT2 * nd.N * nd.D / denB;
    m_weightSum += nd.D * nd.D / denB;
    ++m_weightCount;
  }
  const double denS = Dscale * Dscale + s.var_scale;
  if (denS > 0)
    s.eta_hat += m_opts.gain_eta / kT2 * nd.N * Dscale / denS;
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    if (s.mode[j] != CoefficientMode::Estimated)
      continue;
    const double den = Dtheta[j] * Dtheta[j] + s.var_theta[j];
    if (den > 0)
      s.theta[j] += m_opts.gain_theta[j] / kT2 * nd.N * Dtheta[j] / den;
  }
  ++s.update_count;
  return out;
}

double AlgoTwo::MeanBiasWeight() const
{
  return m_weightCount > 0 ? m_weightSum / static_cast<double>(m_weightCount) : 0.0;
}

double AlgoTwo::LoopTime(double contrast) const
{
  const double w = MeanBiasWeight();
  if (!(w > 0) || !(contrast > 0))
    return INFINITY;
  return m_cfg.Tc / (m_opts.gain_b * contrast / 2 * w);
}
