/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/analysis.hpp"

#include <algorithm>
#include <cmath>

using namespace qahybrid;

namespace
{
constexpr Eigen::Index kMinSamples = 32;

Eigen::VectorXd Prefix(const Eigen::VectorXd& x)
{
  Eigen::VectorXd c(x.size() + 1);
  c[0] = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    c[i + 1] = c[i] + x[i];
  return c;
}

double AdevFromPrefix(const Eigen::VectorXd& c, Eigen::Index n, Eigen::Index m)
{
  // averages over [i, i+m) and [i+m, i+2m)
  const Eigen::Index terms = n - 2 * m + 1;
  double acc = 0;
  for (Eigen::Index i = 0; i < terms; ++i)
  {
    const double d = (c[i + 2 * m] - 2 * c[i + m] + c[i]) / static_cast<double>(m);
    acc += d * d;
  }
  return std::sqrt(0.5 * acc / static_cast<double>(terms));
}

void SelectRange(const AllanCurve& curve, double tau_min, double tau_max, std::vector<double>& tau,
                 std::vector<double>& sig)
{
  for (std::size_t i = 0; i < curve.taus.size(); ++i)
  {
    if (curve.taus[i] >= tau_min * (1 - 1e-12) && curve.taus[i] <= tau_max * (1 + 1e-12))
    {
      tau.push_back(curve.taus[i]);
      sig.push_back(curve.sigma[i]);
    }
  }
  if (tau.size() < 3)
    throw AnalysisError("fewer than 3 Allan points in the fit range");
}
} // namespace

AllanCurve qahybrid::AllanDeviation(const Eigen::VectorXd& series, double Tc, Eigen::Index max_divisor)
{
  const Eigen::Index n = series.size();
  if (n < kMinSamples)
    throw AnalysisError("series too short for an Allan deviation");
  AllanCurve curve;
  curve.Tc = Tc;
  curve.n_samples = n;
  // centring keeps the prefix sums well conditioned
  const Eigen::VectorXd c = Prefix((series.array() - series.mean()).matrix());
  for (Eigen::Index m = 1; m <= n / max_divisor; m *= 2)
  {
    curve.taus.push_back(static_cast<double>(m) * Tc);
    curve.sigma.push_back(AdevFromPrefix(c, n, m));
    curve.counts.push_back(n - 2 * m + 1);
  }
  return curve;
}

double qahybrid::AllanDeviationAt(const Eigen::VectorXd& series, Eigen::Index m)
{
  const Eigen::Index n = series.size();
  if (m < 1 || 2 * m > n)
    throw AnalysisError("averaging factor out of range");
  return AdevFromPrefix(Prefix((series.array() - series.mean()).matrix()), n, m);
}

double qahybrid::FitWhiteLevel(const AllanCurve& curve, double tau_min, double tau_max)
{
  std::vector<double> tau, sig;
  SelectRange(curve, tau_min, tau_max, tau, sig);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < tau.size(); ++i)
  {
    const double w = 1 / std::sqrt(tau[i]);
    num += w * sig[i];
    den += w * w;
  }
  return num / den / std::sqrt(curve.Tc);
}

double qahybrid::LogLogSlope(const AllanCurve& curve, double tau_min, double tau_max)
{
  std::vector<double> tau, sig;
  SelectRange(curve, tau_min, tau_max, tau, sig);
  const auto n = static_cast<double>(tau.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < tau.size(); ++i)
  {
    const double x = std::log(tau[i]);
    const double y = std::log(sig[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double qahybrid::ResidualStd(const Eigen::VectorXd& a_q, const Eigen::VectorXd& a_c)
{
  if (a_q.size() != a_c.size())
    throw AnalysisError("residual series lengths differ");
  double sum = 0, sum2 = 0;
  long n = 0;
  for (Eigen::Index i = 0; i < a_q.size(); ++i)
  {
    if (std::isnan(a_q[i]) || std::isnan(a_c[i]))
      continue;
    const double d = a_q[i] - a_c[i];
    sum += d;
    sum2 += d * d;
    ++n;
  }
  if (n < 2)
    throw AnalysisError("fewer than 2 valid residual pairs");
  const double mean = sum / static_cast<double>(n);
  return std::sqrt(std::max(0.0, (sum2 - n * mean * mean) / static_cast<double>(n - 1)));
}

double qahybrid::QuadratureSubtract(double total, double component)
{
  if (total < component)
    throw AnalysisError("inconsistent budget: component exceeds total");
  return std::sqrt(total * total - component * component);
}

Convergence qahybrid::ClassifyConvergence(const Eigen::VectorXd& b_hat, const Eigen::VectorXd& b_true, double fringe)
{
  if (b_hat.size() != b_true.size() || b_hat.size() < 4)
    throw AnalysisError("bias trace too short or mismatched");
  const Eigen::Index start = 3 * b_hat.size() / 4;
  const Eigen::Index len = b_hat.size() - start;
  const double err = (b_hat.tail(len) - b_true.tail(len)).cwiseAbs().mean();
  return (std::isfinite(err) && err <= fringe / 4) ? Convergence::Converged : Convergence::Diverged;
}

Convergence qahybrid::ClassifyConvergence(const Eigen::VectorXd& b_hat, double b_true, double fringe)
{
  return ClassifyConvergence(b_hat, Eigen::VectorXd::Constant(b_hat.size(), b_true), fringe);
}

double qahybrid::Median(std::vector<double> values)
{
  if (values.empty())
    return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1)
    return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}

double qahybrid::MedianAbsDeviation(const std::vector<double>& values)
{
  const double med = Median(values);
  std::vector<double> dev;
  dev.reserve(values.size());
  for (double v : values)
    dev.push_back(std::abs(v - med));
  return Median(std::move(dev));
}

QuadratureFit qahybrid::FitQuadratureModel(const std::vector<double>& x, const std::vector<double>& y)
{
  if (x.size() != y.size() || x.size() < 3)
    throw AnalysisError("quadrature fit needs at least 3 paired points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const double u = x[i] * x[i];
    const double v = y[i] * y[i];
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
  }
  QuadratureFit fit;
  fit.k = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.c2 = (sy - fit.k * sx) / n;
  double mean = 0;
  for (double v : y)
    mean += v;
  mean /= n;
  double ssRes = 0, ssTot = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const double model = std::sqrt(std::max(0.0, fit.k * x[i] * x[i] + fit.c2));
    ssRes += (y[i] - model) * (y[i] - model);
    ssTot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r2 = ssTot > 0 ? 1 - ssRes / ssTot : (ssRes == 0 ? 1.0 : 0.0);
  return fit;
}

double qahybrid::WhiteLevelOfSeries(const Eigen::VectorXd& series, double Tc, double tau_min, Eigen::Index max_divisor)
{
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(series.size()));
  for (Eigen::Index i = 0; i < series.size(); ++i)
  {
    if (std::isfinite(series[i]))
      kept.push_back(series[i]);
  }
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  const AllanCurve curve = AllanDeviation(v, Tc, max_divisor);
  return FitWhiteLevel(curve, tau_min);
}
