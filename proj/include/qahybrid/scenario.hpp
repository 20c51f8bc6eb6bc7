/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qahybrid/analysis.hpp"
#include "qahybrid/config.hpp"
#include "qahybrid/estimator.hpp"

namespace qahybrid
{

/*!
 * \brief Synthetic cycle-rate record with its ground truth
 */
struct CycleData
{
  double Tc{0};
  std::vector<CycleInputs> inputs;
  Eigen::VectorXd t; ///< cycle mid-time, s
  Eigen::VectorXd a_true; ///< acceleration sensed by the interferometer
  Eigen::VectorXd b_true;
  Eigen::VectorXd contrast_true;
  Eigen::VectorXd ca_residual; ///< a_true minus the truth-corrected classical reading
  std::array<Eigen::VectorXd, kNumCoefficients> theta_true; ///< effective coefficient truth

  Eigen::Index Size() const { return static_cast<Eigen::Index>(inputs.size()); }
};

CycleData GenerateCycles(const ScenarioConfig& cfg, std::uint64_t seed);

enum class Algorithm
{
  One,
  Two,
};

inline std::string_view AlgorithmName(Algorithm a)
{
  return a == Algorithm::One ? "one" : "two";
}

struct AlgoTrace
{
  Eigen::VectorXd a_q_hat; ///< NaN when the extraction is undefined
  Eigen::VectorXd a_c_hat;
  Eigen::VectorXd b_hat;
  Eigen::VectorXd eta_hat;
  Eigen::MatrixXd theta; ///< cycles x coefficients
  Eigen::VectorXd N; ///< Algo II only
  Eigen::VectorXd D;
  std::vector<char> dropped;
};

struct AlgoSummary
{
  Algorithm algo{Algorithm::One};
  std::uint64_t seed{0};
  bool diverged{false};
  double level_1cycle{0}; ///< bias-estimate white level at one cycle
  double level_1s{0};
  double slope{0}; ///< log-log slope over the fit range
  bool fit_clipped{false}; ///< fewer than 3 taus past the loop settling time
  double loop_time{0}; ///< s
  double residual_std{0};
  double dropped_fraction{0};
  double extraction_level{0}; ///< white level of a_q_hat - a_true
  double ca_noise_level{0}; ///< white level of the classical residual
  double b_error_final{0}; ///< final-window mean of b_hat - b
  double eta_final{0};
  std::array<double, kNumCoefficients> theta_final{};
  std::array<double, kNumCoefficients> theta_truth_final{};
  double kink{0}; ///< max |moving average of b_hat - b| over the second half
  AllanCurve allan;
};

struct AlgoRun
{
  AlgoTrace trace;
  AlgoSummary summary;
};

AlgoRun RunAlgorithm(const ScenarioConfig& cfg, const CycleData& data, Algorithm algo, std::uint64_t seed);

struct SeedRun
{
  std::uint64_t seed{0};
  CycleData data;
  std::vector<AlgoRun> runs;
};

SeedRun RunSeed(const ScenarioConfig& cfg, std::uint64_t seed);

/// Median and MAD over converged seeds
struct AggregateSummary
{
  Algorithm algo{Algorithm::One};
  long seeds{0};
  long diverged_seeds{0};
  bool diverged{false}; ///< majority of seeds diverged
  double level_1cycle{0};
  double level_1cycle_mad{0};
  double level_1s{0};
  double slope{0};
  double loop_time{0};
  double residual_std{0};
  double dropped_fraction{0};
  double extraction_level{0};
  double ca_noise_level{0};
  double b_error_final{0};
  double eta_final{0};
  std::array<double, kNumCoefficients> theta_final{};
  double kink{0};
  AllanCurve allan; ///< per-tau median
};

AggregateSummary Aggregate(const std::vector<AlgoSummary>& per_seed);

/*!
 * \brief Closed-form stability limits for a configuration
 */
struct AnalyticLimits
{
  double T{0};
  double detection_1cycle{0}; ///< 2 sqrt(2) sigma_P / (C k T^2)
  double detection_1s{0};
  double coriolis_1cycle{0}; ///< std of the uncorrected Coriolis term
  double contrast_1s{0}; ///< 2 sqrt(3) k T^2 sigma_v^2 sigma_Omega^2 sqrt(Tc)
  double ca_noise_1cycle{0}; ///< eta sigma_delta_a after kernel averaging
};

AnalyticLimits ComputeLimits(const ScenarioConfig& cfg);

/// Max |moving average| of x over [begin, end)
double MaxMovingAverage(const Eigen::VectorXd& x, Eigen::Index window, Eigen::Index begin, Eigen::Index end);

} // namespace qahybrid
