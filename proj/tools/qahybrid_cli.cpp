/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/config.hpp"
#include "qahybrid/harness.hpp"
#include "qahybrid/io.hpp"
#include "qahybrid/synth.hpp"

#include <atomic>
#include <csignal>
#include <iostream>

#include <CLI11.hpp>

using namespace qahybrid;

namespace
{
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

std::atomic<bool> g_interrupt{false};

extern "C" void OnSignal(int)
{
  g_interrupt.store(true);
}

std::string LoadYaml(const std::string& configPath, const std::string& preset)
{
  if (!preset.empty() && !configPath.empty())
    throw ConfigError("give either a config path or --preset, not both");
  if (!preset.empty())
  {
    const auto path = PresetPath(preset);
    if (!std::filesystem::exists(path))
      throw ConfigError("unknown preset '" + preset + "' (looked in " + PresetDirectory().string() + ")");
    return ReadTextFile(path);
  }
  if (configPath.empty())
    throw ConfigError("a config path or --preset is required");
  return ReadTextFile(configPath);
}

void PrintAggregate(const HarnessResult& r)
{
  for (const auto& p : r.points)
  {
    for (const auto& a : p.aggregate)
    {
      std::cout << (p.point.label.empty() ? p.point.config.name : p.point.label) << "  algo " << AlgorithmName(a.algo)
                << "  level_1cycle " << a.level_1cycle << "  slope " << a.slope << "  diverged " << a.diverged_seeds
                << "/" << a.seeds << '\n';
    }
  }
}
} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Hybridization of quantum and classical accelerometers: simulation and estimation"};
  app.require_subcommand(1);

  std::string configPath, preset, outDir;
  long seeds = 0;
  unsigned jobs = 1;
  bool strict = false;
  std::vector<std::string> sweeps;
  auto* run = app.add_subcommand("run", "Run a scenario and write its result bundle");
  run->add_option("config", configPath, "Scenario YAML file");
  run->add_option("--preset", preset, "Committed preset name, e.g. fig1");
  run->add_option("--seeds", seeds, "Number of seeds (overrides run.seeds)")->check(CLI::PositiveNumber);
  run->add_option("--out", outDir, "Output directory");
  run->add_option("--sweep", sweeps, "key=v1,v2,... (repeatable)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--strict", strict, "Exit with status 3 when any seed diverges");

  std::string synthOut;
  std::uint64_t synthSeed = 1;
  double synthDuration = 10;
  bool synthCa = false;
  auto* synth = app.add_subcommand("synth", "Write a synthetic stream as CSV");
  synth->add_option("config", configPath, "Scenario YAML file");
  synth->add_option("--preset", preset, "Committed preset name");
  synth->add_option("--seed", synthSeed, "Seed");
  synth->add_option("--duration", synthDuration, "Seconds")->check(CLI::PositiveNumber);
  synth->add_option("--out", synthOut, "Output CSV")->required();
  synth->add_flag("--ca", synthCa, "Write the classical accelerometer view instead of the truth");

  std::string ingestPath;
  auto* ingest = app.add_subcommand("ingest", "Validate a stream CSV and report throughput");
  ingest->add_option("file", ingestPath, "CSV with header t,ax,ay,az,wx,wy,wz")->required();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (run->parsed())
    {
      const std::string yaml = LoadYaml(configPath, preset);
      std::vector<SweepAxis> axes;
      for (const auto& s : sweeps)
        axes.push_back(ParseSweepSpec(s));
      const ScenarioConfig base = ParseConfig(yaml);

      HarnessOptions opts;
      opts.out_dir = ResolveOutputDir(outDir.empty() ? std::nullopt : std::optional<std::string>(outDir), base.name);
      if (seeds > 0)
        opts.seeds = seeds;
      opts.jobs = jobs;
      opts.interrupt = &g_interrupt;
      std::signal(SIGINT, OnSignal);
      std::signal(SIGTERM, OnSignal);

      const HarnessResult r = RunScenario(yaml, axes, opts);
      PrintAggregate(r);
      std::cout << "results in " << opts.out_dir.string() << '\n';
      if (r.interrupted)
      {
        std::cerr << "interrupted: partial results written\n";
        return kExitError;
      }
      if (strict && r.any_diverged)
      {
        std::cerr << "divergence detected\n";
        return kExitDiverged;
      }
      return 0;
    }
    if (synth->parsed())
    {
      const ScenarioConfig cfg = ParseConfig(LoadYaml(configPath, preset));
      StreamShape shape;
      shape.band_z = cfg.generation.band_z;
      shape.band_xy = cfg.generation.band_xy;
      shape.band_omega = cfg.generation.band_omega;
      SensorStream s = GenTruthStream(cfg.truth, synthDuration, cfg.generation.rate, synthSeed, shape);
      if (synthCa)
        s = ApplyCaModel(s, cfg.truth, {cfg.generation.ca_filter, synthSeed});
      WriteStreamCsv(synthOut, s);
      std::cout << s.Size() << " samples written to " << synthOut << '\n';
      return 0;
    }
    if (ingest->parsed())
    {
      IngestReport report;
      const SensorStream s = IngestImuCsv(ingestPath, &report);
      std::cout << report.rows << " rows, rate " << s.rate << " Hz, " << report.RowsPerSecond() << " rows/s\n";
      return 0;
    }
  }
  catch (const ConfigError& e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
