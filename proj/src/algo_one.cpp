/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/algo_one.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace qahybrid;

namespace
{
constexpr double kTwoPi = 2 * std::numbers::pi;
}

std::optional<double> qahybrid::ExtractAcceleration(const InterferometerConfigd& cfg,
                                                    double P,
                                                    double phi_control,
                                                    double a_c_hat,
                                                    double C_used,
                                                    double P0_used,
                                                    int branch_window)
{
  const double arg = 2 * (P0_used - P) / C_used;
  if (!(std::abs(arg) <= 1))
    return std::nullopt;

  const double kT2 = cfg.ScaleFactor();
  const double predicted = kT2 * a_c_hat + phi_control;
  // a probability identical to the model prediction carries no error
  if (P == P0_used - C_used / 2 * std::cos(predicted))
    return a_c_hat;

  const double principal = std::acos(arg);
  const double center = std::round(predicted / kTwoPi);

  double best = 0;
  double bestDist = INFINITY;
  for (double sign : {1.0, -1.0})
  {
    double m = std::round((predicted - sign * principal) / kTwoPi);
    m = std::clamp(m, center - branch_window, center + branch_window);
    const double phase = sign * principal + kTwoPi * m;
    const double dist = std::abs(phase - predicted);
    if (dist < bestDist)
    {
      bestDist = dist;
      best = phase;
    }
  }
  return (best - phi_control) / kT2;
}

AlgoOne::AlgoOne(const InterferometerConfigd& cfg, const AlgoOneOptions& opts, const EstimatorState& initial)
  : m_cfg(cfg), m_opts(opts), m_state(initial), m_alpha(cfg.Tc / opts.average_time)
{
  if (!(opts.C_used > 0))
    throw std::invalid_argument("assumed contrast must be positive");
  if (!(opts.average_time > 0))
    throw std::invalid_argument("average time must be positive");
}

double AlgoOne::ContrastFor(const CycleInputs& in) const
{
  if (m_opts.contrast_correction && std::isfinite(in.contrast))
    return in.contrast;
  return m_opts.C_used;
}

std::optional<double> AlgoOne::Extract(const CycleInputs& in, double a_c_hat) const
{
  return ExtractAcceleration(m_cfg, in.P, in.phi_control, a_c_hat, ContrastFor(in), m_opts.P0_used,
                             m_opts.branch_window);
}

void AlgoOne::UpdateAverages(const CycleInputs& in)
{
  EstimatorState& s = m_state;
  ++s.var_count;
  const double w = std::max(m_alpha, 1.0 / static_cast<double>(s.var_count));
  s.var_scale += w * (in.a_ca * in.a_ca - s.var_scale);
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    const double x = Regressor(in, static_cast<Coefficient>(j));
    s.var_theta[j] += w * (x * x - s.var_theta[j]);
  }
}

AlgoOneStep AlgoOne::Step(const CycleInputs& in)
{
  if (!in.Finite())
    throw std::invalid_argument("non-finite cycle inputs");

  UpdateAverages(in);

  AlgoOneStep out;
  out.a_c_hat = CorrectedClassical(m_state, in);
  const auto a_q = Extract(in, out.a_c_hat);
  if (!a_q)
  {
    out.dropped = true;
    out.a_q_hat = std::nan("");
    ++m_state.dropped_count;
    return out;
  }
  out.a_q_hat = *a_q;

  const double e = out.a_q_hat - out.a_c_hat;
  EstimatorState& s = m_state;
  const double a = in.a_ca;
  s.b_hat += m_opts.gain_b * e;
  ++s.update_count;
  if (s.var_count < m_opts.warmup_cycles)
    return out;
  if (m_opts.regularization == ScaleRegularization::PseudoInverse)
  {
    const double den = a * a + s.var_scale;
    if (den > 0)
      s.eta_hat += m_opts.gain_eta * e * a / den;
  }
  else if (s.var_scale > 0)
  {
    s.eta_hat += m_opts.gain_eta * e * a / s.var_scale;
  }
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    if (s.mode[j] != CoefficientMode::Estimated)
      continue;
    const double x = Regressor(in, static_cast<Coefficient>(j));
    const double den = x * x + s.var_theta[j];
    if (den > 0)
      s.theta[j] += m_opts.gain_theta[j] * e * x / den;
  }
  return out;
}
