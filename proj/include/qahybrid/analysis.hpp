/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace qahybrid
{

class AnalysisError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*!
 * \brief Overlapping Allan deviation at octave-spaced averaging times
 */
struct AllanCurve
{
  double Tc{0}; ///< sample spacing, s
  Eigen::Index n_samples{0};
  std::vector<double> taus; ///< s
  std::vector<double> sigma;
  std::vector<Eigen::Index> counts; ///< overlapping differences per tau
  double fit_level{std::numeric_limits<double>::quiet_NaN()}; ///< extrapolated to tau = Tc
};

/// Averaging factors 1, 2, 4, ... up to n / max_divisor samples
AllanCurve AllanDeviation(const Eigen::VectorXd& series, double Tc, Eigen::Index max_divisor = 4);

/// Single averaging factor m
double AllanDeviationAt(const Eigen::VectorXd& series, Eigen::Index m);

/// Least-squares A of sigma = A / sqrt(tau) over [tau_min, tau_max], returns A / sqrt(Tc)
double FitWhiteLevel(const AllanCurve& curve, double tau_min, double tau_max = INFINITY);

/// Log-log slope over [tau_min, tau_max]
double LogLogSlope(const AllanCurve& curve, double tau_min, double tau_max = INFINITY);

/// Sample standard deviation of a_q - a_c, skipping pairs where either is NaN
double ResidualStd(const Eigen::VectorXd& a_q, const Eigen::VectorXd& a_c);

/// sqrt(total^2 - component^2)
double QuadratureSubtract(double total, double component);

enum class Convergence
{
  Converged,
  Diverged,
};

/// Diverged when the final-quarter mean |b_hat - b| exceeds fringe / 4
Convergence ClassifyConvergence(const Eigen::VectorXd& b_hat, const Eigen::VectorXd& b_true, double fringe);
Convergence ClassifyConvergence(const Eigen::VectorXd& b_hat, double b_true, double fringe);

double Median(std::vector<double> values);

/// Unscaled median absolute deviation
double MedianAbsDeviation(const std::vector<double>& values);

/*!
 * \brief Fit of y = sqrt(k x^2 + c^2)
 *
 * Linear least squares on y^2 against x^2, then R^2 of y against the model.
 */
struct QuadratureFit
{
  double k{0};
  double c2{0};
  double r2{0};
};

QuadratureFit FitQuadratureModel(const std::vector<double>& x, const std::vector<double>& y);

/// Fitted white level of a series with NaN entries removed
double WhiteLevelOfSeries(const Eigen::VectorXd& series, double Tc, double tau_min, Eigen::Index max_divisor = 8);

} // namespace qahybrid
