/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qahybrid/config.hpp"
#include "qahybrid/scenario.hpp"

namespace qahybrid
{

/// One cell of the sweep grid
struct SweepPoint
{
  std::string label; ///< "key=value;key=value", empty without sweep
  ScenarioConfig config;
  std::string hash;
};

/// Cartesian product of the config's sweep axes followed by extra axes
std::vector<SweepPoint> ExpandSweep(const std::string& yaml_text, const std::vector<SweepAxis>& extra = {});

struct PointResult
{
  SweepPoint point;
  AnalyticLimits limits;
  std::vector<std::vector<AlgoSummary>> per_seed; ///< [algorithm][seed]
  std::vector<AggregateSummary> aggregate;
  long completed_seeds{0};
};

struct HarnessOptions
{
  std::filesystem::path out_dir;
  std::optional<long> seeds; ///< overrides run.seeds
  unsigned jobs{1};
  bool write_files{true};
  const std::atomic<bool>* interrupt{nullptr};
};

struct HarnessResult
{
  std::vector<PointResult> points;
  bool interrupted{false};
  bool any_diverged{false};
};

/*!
 * \brief Runs every (sweep point, seed) cell and writes the result bundle
 *
 * Files: summary.csv, limits.csv, and per point allan_<algo>.csv,
 * trace_<algo>_<seed>.csv and budget.txt (in point_NNN/ when sweeping).
 */
HarnessResult RunScenario(const std::string& yaml_text, const std::vector<SweepAxis>& extra_sweeps,
                          const HarnessOptions& opts);

/// Output root: explicit dir, else $QAHYBRID_OUT_ROOT/<name>, else results/<name>
std::filesystem::path ResolveOutputDir(const std::optional<std::string>& explicit_dir, const std::string& name);

std::string ReadTextFile(const std::filesystem::path& path);

/// Columns i,t,P,phi_control,a_ca,a_q_hat,a_c_hat,b_hat,eta_hat,<applied coefficients>,dropped[,N,D]
void WriteTrace(const std::filesystem::path& path, const ScenarioConfig& cfg, const CycleData& data,
                const AlgoRun& run);

} // namespace qahybrid
