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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qahybrid/algo_one.hpp"
#include "qahybrid/algo_two.hpp"
#include "qahybrid/estimator.hpp"
#include "qahybrid/signal_model.hpp"
#include "qahybrid/synth.hpp"

namespace qahybrid
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class GenerationMode
{
  PerCycle, ///< white draws at cycle rate
  Stream, ///< high-rate streams reduced through the kernels
};

struct TurnFraction
{
  double start{0}; ///< fraction of the run
  double duration{0};
  double accel_x{0}; ///< m/s^2
};

struct GenerationConfig
{
  GenerationMode mode{GenerationMode::PerCycle};
  long cycles{100000};
  double rate{1000}; ///< Hz, stream mode
  bool ca_filter{false};
  double band_z{0}; ///< Hz, 0 keeps the channel white
  double band_xy{0};
  double band_omega{0};
  std::vector<TurnFraction> turns;
};

struct CoefficientConfig
{
  CoefficientMode mode{CoefficientMode::Off};
  double initial{0};
  double gain_one{-1}; ///< negative: use the scale-factor gain
  double gain_two{-1};
};

struct EstimatorConfig
{
  double b0{0};
  double eta0{1};
  std::array<CoefficientConfig, kNumCoefficients> coefficients{};
  bool contrast_correction{false};
};

struct AlgoOneConfig
{
  double gain_b{0.2};
  double gain_eta{0.2};
  double average_time{10};
  long warmup_cycles{10};
  int branch_window{5};
  ScaleRegularization regularization{ScaleRegularization::PseudoInverse};
  double C_error{0}; ///< relative error of the assumed contrast
  double P0_error{0}; ///< absolute error of the assumed offset
};

struct AlgoTwoConfig
{
  double gain_b{0.24};
  double gain_eta{0.24};
  double average_time{10};
  long warmup_cycles{10};
  ScaleRegressorForm scale_form{ScaleRegressorForm::Sine};
};

struct AnalysisConfig
{
  double fit_start_loops{5}; ///< fit begins at this many loop time constants
  long max_tau_divisor{8}; ///< largest tau is n Tc / divisor
  double residual_start{0.25}; ///< fraction of the run skipped by residual_std
  double average_start{0.75}; ///< final-window start for time-averaged estimates
  long kink_window{600}; ///< cycles in the bias-kink moving average
};

enum class TraceOutput
{
  All,
  First,
  None,
};

struct SweepAxis
{
  std::string key;
  std::vector<std::string> values;
};

/*!
 * \brief Complete description of one experiment
 */
struct ScenarioConfig
{
  std::string name{"scenario"};
  std::string description;
  InterferometerConfigd interferometer;
  TruthParamsd truth; ///< eta_x_step_time holds a run fraction here
  GenerationConfig generation;
  ModulationSchedule modulation;
  EstimatorConfig estimator;
  bool run_one{true};
  bool run_two{true};
  AlgoOneConfig algo_one;
  AlgoTwoConfig algo_two;
  AnalysisConfig analysis;
  long seeds{8};
  long first_seed{1};
  TraceOutput traces{TraceOutput::First};
  std::vector<SweepAxis> sweep;

  double Duration() const { return static_cast<double>(generation.cycles) * interferometer.Tc; }
  AlgoOneOptions OneOptions() const;
  AlgoTwoOptions TwoOptions() const;
  EstimatorState InitialState() const;
  double AssumedContrast() const { return interferometer.C0 * (1 + algo_one.C_error); }
};

ScenarioConfig ParseConfig(const std::string& yaml_text);
ScenarioConfig LoadConfigFile(const std::filesystem::path& path);

/// Sets dotted key (e.g. interferometer.T) to a YAML scalar and re-validates
std::string ApplyOverride(const std::string& yaml_text, const std::string& key, const std::string& value);

/// "key=v1,v2,..." -> axis
SweepAxis ParseSweepSpec(const std::string& spec);

/// Every field, fixed order, full precision; excludes sweep and output settings
std::string CanonicalText(const ScenarioConfig& cfg);

/// FNV-1a 64 of CanonicalText, hex
std::string ConfigHash(const ScenarioConfig& cfg);

std::filesystem::path PresetDirectory();
std::filesystem::path PresetPath(const std::string& name);

} // namespace qahybrid
