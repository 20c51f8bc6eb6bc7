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

#include "qahybrid/estimator.hpp"
#include "qahybrid/rng.hpp"
#include "qahybrid/signal_model.hpp"

namespace qahybrid
{

enum class ModulationMode
{
  None,
  ThreeStep, ///< pi/2, 0, -pi/2, repeating
  UniformRandom, ///< uniform over [0, 2 pi)
};

struct ModulationSchedule
{
  ModulationMode mode{ModulationMode::ThreeStep};
  double amplitude{1}; ///< multiplies the three-step pattern
  std::uint64_t seed{0};
};

/// Control phase of cycle i; random draws are addressed by (seed, i)
double NextControlPhase(const ModulationSchedule& sched, std::uint64_t i);

/*!
 * \brief Three most recent cycles, oldest first
 */
struct TripletBuffer
{
  std::array<CycleInputs, 3> cycles{};
  std::array<double, 3> phase{}; ///< estimated phases at the time each cycle arrived
  std::array<double, 3> contrast_scale{1, 1, 1}; ///< model contrast relative to nominal
  int count{0};

  void Push(const CycleInputs& in, double phase_hat, double scale = 1);
  bool Full() const { return count >= 3; }
};

struct NDPair
{
  double N{0};
  double D{0};
};

/// N and D from a full buffer; contrast scales multiply the model cos/sin terms
NDPair ComputeND(const TripletBuffer& buf);

/// Same combination as D with the sine (or cosine) factors weighted by a regressor
enum class ScaleRegressorForm
{
  Sine, ///< weights the sine factors, aligned with dN/d(coefficient)
  Cosine, ///< weights the cosine factors
};

double ComputeWeightedD(const TripletBuffer& buf, const std::array<double, 3>& x, ScaleRegressorForm form);

struct AlgoTwoOptions
{
  double gain_b{0.24};
  double gain_eta{0.24};
  std::array<double, kNumCoefficients> gain_theta{0.24, 0.24, 0.24, 0.24, 0.24, 0.24};
  double average_time{10}; ///< s
  long warmup_cycles{10}; ///< triplets averaged before the first update
  ScaleRegressorForm scale_form{ScaleRegressorForm::Sine};
  bool contrast_correction{false};
  double contrast_reference{0.23}; ///< divides CycleInputs::contrast
};

struct AlgoTwoStep
{
  double a_c_hat{0};
  double N{0};
  double D{0};
  bool updated{false}; ///< false while the buffer fills
};

/*!
 * \brief Three-cycle fringe tracking hybridization
 */
class AlgoTwo
{
public:
  AlgoTwo(const InterferometerConfigd& cfg, const AlgoTwoOptions& opts, const EstimatorState& initial);

  AlgoTwoStep Step(const CycleInputs& in);

  const EstimatorState& State() const { return m_state; }
  const AlgoTwoOptions& Options() const { return m_opts; }
  const TripletBuffer& Buffer() const { return m_buf; }

  /// Mean of D^2 / (D^2 + sigma_D^2) over the updates so far
  double MeanBiasWeight() const;

  /// Tc / (G' C/2 w), with w the mean bias weight
  double LoopTime(double contrast) const;

private:
  double ContrastScale(const CycleInputs& in) const;

  InterferometerConfigd m_cfg;
  AlgoTwoOptions m_opts;
  EstimatorState m_state;
  TripletBuffer m_buf;
  double m_alpha;
  double m_weightSum{0};
  long m_weightCount{0};
};

} // namespace qahybrid
