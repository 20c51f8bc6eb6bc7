/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/kernels.hpp"

#include <cmath>
#include <string>

using namespace qahybrid;

KernelSet qahybrid::BuildKernels(double T, double rate)
{
  if (!(T > 0) || !(rate > 0))
    throw KernelError("kernel needs positive T and rate");
  const double samples = T * rate;
  const auto n = static_cast<Eigen::Index>(std::llround(samples));
  if (2 * n < 4)
    throw KernelError("rate too coarse: fewer than 4 samples per interferometer");
  if (std::abs(samples - static_cast<double>(n)) > 1e-6 * samples)
    throw KernelError("T * rate must be an integer number of samples");

  KernelSet k;
  k.rate = rate;
  k.T = T;
  k.half = n;
  const Eigen::Index taps = 2 * n + 1;
  const double h = 1.0 / rate;

  k.g.resize(taps);
  for (Eigen::Index j = 0; j < taps; ++j)
    k.g[j] = static_cast<double>(std::min(j, 2 * n - j));
  k.g /= k.g.sum();

  auto gAt = [&](Eigen::Index j) { return (j < 0 || j >= taps) ? 0.0 : k.g[j]; };
  k.g1.resize(taps);
  k.g2.resize(taps);
  for (Eigen::Index j = 0; j < taps; ++j)
  {
    k.g1[j] = (gAt(j - 1) - gAt(j + 1)) / (2 * h);
    k.g2[j] = (gAt(j + 1) - 2 * gAt(j) + gAt(j - 1)) / (h * h);
  }
  k.g1.array() -= k.g1.mean();
  k.g2.array() -= k.g2.mean();
  return k;
}

double qahybrid::WeightedAverage(const Eigen::VectorXd& x, const KernelSet& kernels, Eigen::Index start_index)
{
  return x.segment(start_index, kernels.Taps()).dot(kernels.g);
}

CycleInputs qahybrid::CycleReduce(const SensorStream& stream, const KernelSet& kernels, Eigen::Index start_index)
{
  if (start_index < 0 || start_index + kernels.Taps() > stream.Size())
    throw KernelError("cycle window at sample " + std::to_string(start_index) + " exceeds the stream");
  const Eigen::Index taps = kernels.Taps();
  CycleInputs c;
  const auto z = stream.az.segment(start_index, taps);
  c.a_ca = z.dot(kernels.g);
  c.a_prime = z.dot(kernels.g1);
  c.a_dprime = z.dot(kernels.g2);
  c.a_x = WeightedAverage(stream.ax, kernels, start_index);
  c.a_y = WeightedAverage(stream.ay, kernels, start_index);
  c.omega_x = WeightedAverage(stream.wx, kernels, start_index);
  c.omega_y = WeightedAverage(stream.wy, kernels, start_index);
  return c;
}

CycleInputs qahybrid::CycleReduceAt(const SensorStream& stream, const KernelSet& kernels, double cycle_start)
{
  if (stream.Size() == 0)
    throw KernelError("empty stream");
  const double offset = (cycle_start - stream.t[0]) * stream.rate;
  const auto idx = static_cast<Eigen::Index>(std::llround(offset));
  if (std::abs(offset - static_cast<double>(idx)) > 1e-6)
    throw KernelError("cycle start does not fall on a sample");
  return CycleReduce(stream, kernels, idx);
}
