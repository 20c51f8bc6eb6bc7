/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "qahybrid/estimator.hpp"
#include "qahybrid/synth.hpp"

namespace qahybrid
{

/*!
 * \brief Triangular interferometer weights and their derivative kernels
 *
 * g has 2n+1 taps (n = T * rate) with zero-weight endpoints and unit sum.
 * g1 and g2 are the adjoints of the central first and second differences
 * applied to g, so that sum(g1 x) = sum(g x') and sum(g2 x) = sum(g x'').
 * For the triangle, g2 is 1/T^2, -2/T^2, 1/T^2 at the start, apex and end.
 */
struct KernelSet
{
  double rate{0}; ///< Hz
  double T{0}; ///< s
  Eigen::Index half{0}; ///< n, taps per pulse separation
  Eigen::VectorXd g;
  Eigen::VectorXd g1; ///< 1/s
  Eigen::VectorXd g2; ///< 1/s^2

  Eigen::Index Taps() const { return g.size(); }
};

class KernelError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

KernelSet BuildKernels(double T, double rate);

/// Kernel outputs for one window; a_ca / a_prime / a_dprime come from the a_z channel
CycleInputs CycleReduce(const SensorStream& stream, const KernelSet& kernels, Eigen::Index start_index);

/// Same, window located by its start time
CycleInputs CycleReduceAt(const SensorStream& stream, const KernelSet& kernels, double cycle_start);

/// Triangular average of one channel over a window
double WeightedAverage(const Eigen::VectorXd& x, const KernelSet& kernels, Eigen::Index start_index);

} // namespace qahybrid
