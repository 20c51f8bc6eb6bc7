/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <array>
#include <optional>

#include "qahybrid/estimator.hpp"
#include "qahybrid/signal_model.hpp"

namespace qahybrid
{

enum class ScaleRegularization
{
  PseudoInverse, ///< e a / (a^2 + sigma^2)
  Direct, ///< e a / sigma^2
};

struct AlgoOneOptions
{
  double gain_b{0.2};
  double gain_eta{0.2};
  std::array<double, kNumCoefficients> gain_theta{0.2, 0.2, 0.2, 0.2, 0.2, 0.2};
  double average_time{10}; ///< s, time constant of the regressor power averages
  long warmup_cycles{10}; ///< running means are plain means until then; scale and coefficient updates wait
  int branch_window{5}; ///< fringes searched either side of the classical estimate
  double C_used{0.23}; ///< contrast assumed by the extraction
  double P0_used{0.5};
  bool contrast_correction{false}; ///< use CycleInputs::contrast when finite
  ScaleRegularization regularization{ScaleRegularization::PseudoInverse};
};

/// Per-cycle outcome, also the trace row content
struct AlgoOneStep
{
  double a_q_hat{0}; ///< NaN when dropped
  double a_c_hat{0};
  bool dropped{false};
};

/*!
 * \brief Acceleration from one probability, on the branch closest to a_c_hat
 *
 * Returns nothing when |2 (P0 - P) / C| > 1.
 */
std::optional<double> ExtractAcceleration(const InterferometerConfigd& cfg,
                                          double P,
                                          double phi_control,
                                          double a_c_hat,
                                          double C_used,
                                          double P0_used,
                                          int branch_window = 5);

/*!
 * \brief Direct phase extraction hybridization
 */
class AlgoOne
{
public:
  AlgoOne(const InterferometerConfigd& cfg, const AlgoOneOptions& opts, const EstimatorState& initial);

  /// Contrast used for this cycle
  double ContrastFor(const CycleInputs& in) const;

  std::optional<double> Extract(const CycleInputs& in, double a_c_hat) const;

  AlgoOneStep Step(const CycleInputs& in);

  const EstimatorState& State() const { return m_state; }
  const AlgoOneOptions& Options() const { return m_opts; }

  /// Tc / G_b
  double LoopTime() const { return m_cfg.Tc / m_opts.gain_b; }

private:
  void UpdateAverages(const CycleInputs& in);

  InterferometerConfigd m_cfg;
  AlgoOneOptions m_opts;
  EstimatorState m_state;
  double m_alpha;
};

} // namespace qahybrid
