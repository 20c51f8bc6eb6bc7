/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/synth.hpp"

#include "qahybrid/rng.hpp"

#include <cmath>
#include <numbers>

using namespace qahybrid;

namespace
{
constexpr double kButterworthQ = 0.70710678118654752;

Eigen::VectorXd WhiteChannel(Eigen::Index n, double stddev, std::uint64_t seed, std::uint64_t ch)
{
  Eigen::VectorXd x(n);
  if (stddev == 0)
  {
    x.setZero();
    return x;
  }
  RandomStream rs(seed, ch);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = rs.Normal(stddev);
  return x;
}

Eigen::VectorXd ShapedChannel(Eigen::Index n, double stddev, double band, double rate, std::uint64_t seed,
                              std::uint64_t ch)
{
  if (band <= 0 || stddev == 0)
    return WhiteChannel(n, stddev, seed, ch);
  Eigen::VectorXd x = LowpassSeries(WhiteChannel(n, 1.0, seed, ch), 2 * std::numbers::pi * band, kButterworthQ, rate);
  const double mean = x.mean();
  const double sd = std::sqrt((x.array() - mean).square().sum() / static_cast<double>(n));
  return sd > 0 ? Eigen::VectorXd(x * (stddev / sd)) : x;
}

bool AllFinite(const TruthParamsd& p)
{
  for (double v : {p.sigma_a, p.sigma_ax, p.sigma_ay, p.b, p.bias_drift, p.eta, p.sigma_delta_a, p.eta_x, p.eta_y,
                   p.eta_prime, p.eta_dprime, p.sigma_omega_x, p.sigma_omega_y, p.sigma_omega_z, p.v_x0, p.v_y0,
                   p.eta_x_step_time, p.eta_x_step_factor})
  {
    if (!std::isfinite(v))
      return false;
  }
  return true;
}
} // namespace

template<>
bool TruthParams<double>::Valid() const
{
  return AllFinite(*this) && sigma_a >= 0 && sigma_ax >= 0 && sigma_ay >= 0 && sigma_delta_a >= 0 &&
         sigma_omega_x >= 0 && sigma_omega_y >= 0 && sigma_omega_z >= 0 && eta > 0 && eta_prime >= 0 &&
         eta_dprime >= 0;
}

void SensorStream::Resize(Eigen::Index n)
{
  t.resize(n);
  ax.resize(n);
  ay.resize(n);
  az.resize(n);
  wx.resize(n);
  wy.resize(n);
  wz.resize(n);
}

SensorStream qahybrid::GenTruthStream(const TruthParamsd& params, double duration, double rate, std::uint64_t seed)
{
  return GenTruthStream(params, duration, rate, seed, StreamShape{});
}

SensorStream qahybrid::GenTruthStream(const TruthParamsd& params,
                                      double duration,
                                      double rate,
                                      std::uint64_t seed,
                                      const StreamShape& shape)
{
  if (!(duration > 0) || !(rate > 0) || !std::isfinite(duration) || !std::isfinite(rate))
    throw SynthError("duration and rate must be positive");
  if (!AllFinite(params))
    throw SynthError("truth parameters must be finite");

  const auto n = static_cast<Eigen::Index>(std::llround(duration * rate));
  SensorStream s;
  s.rate = rate;
  s.t = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) / rate;
  s.az = ShapedChannel(n, params.sigma_a, shape.band_z, rate, seed, channel::kAccelZ);
  s.ax = ShapedChannel(n, params.sigma_ax, shape.band_xy, rate, seed, channel::kAccelX);
  s.ay = ShapedChannel(n, params.sigma_ay, shape.band_xy, rate, seed, channel::kAccelY);
  s.wx = ShapedChannel(n, params.sigma_omega_x, shape.band_omega, rate, seed, channel::kOmegaX);
  s.wy = ShapedChannel(n, params.sigma_omega_y, shape.band_omega, rate, seed, channel::kOmegaY);
  s.wz = ShapedChannel(n, params.sigma_omega_z, shape.band_omega, rate, seed, channel::kOmegaZ);

  for (const Turn& turn : shape.turns)
  {
    for (Eigen::Index i = 0; i < n; ++i)
    {
      if (s.t[i] >= turn.start && s.t[i] < turn.start + turn.duration)
        s.ax[i] += turn.accel_x;
    }
  }
  return s;
}

Eigen::VectorXd qahybrid::LowpassSeries(const Eigen::VectorXd& x, double omega0, double q, double rate)
{
  if (!(omega0 > 0) || !(q > 0) || !(rate > 0))
    throw SynthError("filter needs positive omega0, q and rate");

  // -3 dB point of the analogue prototype
  const double b = 1.0 / (q * q) - 2.0;
  const double x2 = (-b + std::sqrt(b * b + 4.0)) / 2.0;
  const double f3db = omega0 * std::sqrt(x2) / (2 * std::numbers::pi);
  if (rate < 2 * f3db)
    throw SynthError("sample rate too low for the filter bandwidth");

  // s -> K (1 - z^-1) / (1 + z^-1), no prewarping so the low-frequency
  // expansion 1 - s/(q w0) + ... is preserved
  const double K = 2.0 * rate;
  const double A = 1.0 / (omega0 * omega0);
  const double B = 1.0 / (q * omega0);
  const double d0 = A * K * K + B * K + 1.0;
  const double d1 = (2.0 - 2.0 * A * K * K) / d0;
  const double d2 = (A * K * K - B * K + 1.0) / d0;
  const double n0 = 1.0 / d0;

  Eigen::VectorXd y(x.size());
  if (x.size() == 0)
    return y;
  double x1 = x[0], x2s = x[0], y1 = x[0], y2 = x[0];
  for (Eigen::Index i = 0; i < x.size(); ++i)
  {
    const double yi = n0 * (x[i] + 2.0 * x1 + x2s) - d1 * y1 - d2 * y2;
    x2s = x1;
    x1 = x[i];
    y2 = y1;
    y1 = yi;
    y[i] = yi;
  }
  return y;
}

SensorStream qahybrid::SecondOrderLowpass(const SensorStream& stream, double omega0, double q)
{
  SensorStream out = stream;
  out.az = LowpassSeries(stream.az, omega0, q, stream.rate);
  return out;
}

void qahybrid::FilterFromCoefficients(double eta_prime, double eta_dprime, double& omega0, double& q)
{
  if (!(eta_prime > 0) || !(eta_dprime > 0))
    throw SynthError("filter coefficients must be positive");
  omega0 = 1.0 / std::sqrt(eta_dprime);
  q = 1.0 / (eta_prime * omega0);
}

SensorStream qahybrid::ApplyCaModel(const SensorStream& truth, const TruthParamsd& params, const CaModelOptions& opts)
{
  SensorStream out = truth;
  if (opts.filter && params.eta_prime > 0 && params.eta_dprime > 0)
  {
    double omega0 = 0, q = 0;
    FilterFromCoefficients(params.eta_prime, params.eta_dprime, omega0, q);
    out.az = LowpassSeries(truth.az, omega0, q, truth.rate);
  }
  RandomStream noise(opts.seed, channel::kCaNoise);
  for (Eigen::Index i = 0; i < out.Size(); ++i)
  {
    double a = (out.az[i] - params.BiasAt(truth.t[i])) / params.eta;
    if (params.sigma_delta_a > 0)
      a += noise.Normal(params.sigma_delta_a);
    out.az[i] = a;
  }
  return out;
}
