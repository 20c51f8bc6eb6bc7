/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/harness.hpp"

#include "qahybrid/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace qahybrid;

namespace
{

std::vector<std::string> SummaryHeader()
{
  std::vector<std::string> h = {"scenario",       "point",          "sweep",         "algo",
                                "seed",           "converged",      "diverged_seeds", "seeds",
                                "level_1cycle",   "level_1cycle_mad", "level_1s",    "slope",
                                "loop_time",      "residual_std",   "dropped_fraction", "extraction_level",
                                "ca_noise_level", "b_error_final",  "eta_final"};
  for (auto name : kCoefficientNames)
    h.push_back(std::string(name) + "_final");
  h.push_back("kink");
  h.push_back("config_hash");
  return h;
}

std::filesystem::path PointDir(const std::filesystem::path& root, std::size_t index, bool sweeping)
{
  if (!sweeping)
    return root;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "point_%03zu", index);
  return root / buf;
}

void WriteBudget(const std::filesystem::path& path, const PointResult& p)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write '" + path.string() + "'");
  out << "scenario=" << p.point.config.name << '\n';
  out << "sweep=" << p.point.label << '\n';
  out << "config_hash=" << p.point.hash << '\n';
  out << "limit_detection_1cycle=" << FormatValue(p.limits.detection_1cycle) << '\n';
  out << "limit_ca_noise_1cycle=" << FormatValue(p.limits.ca_noise_1cycle) << '\n';
  out << "limit_quadrature_1cycle="
      << FormatValue(std::hypot(p.limits.detection_1cycle, p.limits.ca_noise_1cycle)) << '\n';
  out << "limit_coriolis_1cycle=" << FormatValue(p.limits.coriolis_1cycle) << '\n';
  out << "limit_contrast_1s=" << FormatValue(p.limits.contrast_1s) << '\n';
  for (const auto& a : p.aggregate)
  {
    const std::string pre = std::string(AlgorithmName(a.algo)) + ".";
    out << pre << "level_1cycle=" << FormatValue(a.level_1cycle) << '\n';
    out << pre << "extraction_level=" << FormatValue(a.extraction_level) << '\n';
    out << pre << "ca_noise_level=" << FormatValue(a.ca_noise_level) << '\n';
    const double induced = std::hypot(a.extraction_level, a.ca_noise_level);
    out << pre << "induced_quadrature=" << FormatValue(induced) << '\n';
    if (std::isfinite(a.level_1cycle) && a.level_1cycle >= induced)
      out << pre << "excess_over_induced=" << FormatValue(QuadratureSubtract(a.level_1cycle, induced)) << '\n';
    out << pre << "diverged_seeds=" << a.diverged_seeds << '\n';
  }
}

void WriteSummaryRow(CsvWriter& w, const SweepPoint& pt, std::size_t index, const std::string& seed,
                     const AlgoSummary* s, const AggregateSummary* a)
{
  w << pt.config.name << static_cast<long>(index) << pt.label;
  if (a)
  {
    w << std::string(AlgorithmName(a->algo)) << seed << static_cast<long>(!a->diverged) << a->diverged_seeds
      << a->seeds << a->level_1cycle << a->level_1cycle_mad << a->level_1s << a->slope << a->loop_time
      << a->residual_std << a->dropped_fraction << a->extraction_level << a->ca_noise_level << a->b_error_final
      << a->eta_final;
    for (double v : a->theta_final)
      w << v;
    w << a->kink;
  }
  else
  {
    w << std::string(AlgorithmName(s->algo)) << seed << static_cast<long>(!s->diverged)
      << static_cast<long>(s->diverged) << 1L << s->level_1cycle << 0.0 << s->level_1s << s->slope << s->loop_time
      << s->residual_std << s->dropped_fraction << s->extraction_level << s->ca_noise_level << s->b_error_final
      << s->eta_final;
    for (double v : s->theta_final)
      w << v;
    w << s->kink;
  }
  w << pt.hash;
  w.EndRow();
}

bool WantTrace(TraceOutput mode, long seedIndex)
{
  return mode == TraceOutput::All || (mode == TraceOutput::First && seedIndex == 0);
}

} // namespace

std::string qahybrid::ReadTextFile(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SweepPoint> qahybrid::ExpandSweep(const std::string& yaml_text, const std::vector<SweepAxis>& extra)
{
  const ScenarioConfig base = ParseConfig(yaml_text);
  std::vector<SweepAxis> axes = base.sweep;
  for (const auto& e : extra)
  {
    bool replaced = false;
    for (auto& a : axes)
    {
      if (a.key == e.key)
      {
        a = e;
        replaced = true;
      }
    }
    if (!replaced)
      axes.push_back(e);
  }

  std::vector<SweepPoint> points;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true)
  {
    std::string text = yaml_text;
    std::string label;
    for (std::size_t k = 0; k < axes.size(); ++k)
    {
      text = ApplyOverride(text, axes[k].key, axes[k].values[idx[k]]);
      label += (label.empty() ? "" : ";") + axes[k].key + "=" + axes[k].values[idx[k]];
    }
    SweepPoint p;
    p.label = label;
    p.config = ParseConfig(text);
    p.config.sweep.clear();
    p.hash = ConfigHash(p.config);
    points.push_back(std::move(p));

    std::size_t k = axes.size();
    while (k > 0)
    {
      --k;
      if (++idx[k] < axes[k].values.size())
        break;
      idx[k] = 0;
      if (k == 0)
        return points;
    }
    if (axes.empty())
      return points;
  }
}

std::filesystem::path qahybrid::ResolveOutputDir(const std::optional<std::string>& explicit_dir,
                                                 const std::string& name)
{
  if (explicit_dir)
    return *explicit_dir;
  if (const char* root = std::getenv("QAHYBRID_OUT_ROOT"); root && *root)
    return std::filesystem::path(root) / name;
  return std::filesystem::path("results") / name;
}

void qahybrid::WriteTrace(const std::filesystem::path& path, const ScenarioConfig& cfg, const CycleData& data,
                          const AlgoRun& run)
{
  const double Tc = cfg.interferometer.Tc;
  std::vector<Coefficient> applied;
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    if (cfg.estimator.coefficients[j].mode != CoefficientMode::Off)
      applied.push_back(static_cast<Coefficient>(j));
  }
  std::vector<std::string> header = {"i",    "t",       "P",       "phi_control", "a_ca",
                                     "a_q_hat", "a_c_hat", "b_hat", "eta_hat"};
  for (auto c : applied)
    header.emplace_back(Name(c));
  header.emplace_back("dropped");
  const bool nd = run.summary.algo == Algorithm::Two;
  if (nd)
  {
    header.emplace_back("N");
    header.emplace_back("D");
  }
  CsvWriter w(path, header);
  const AlgoTrace& tr = run.trace;
  for (Eigen::Index i = 0; i < data.Size(); ++i)
  {
    const CycleInputs& in = data.inputs[static_cast<std::size_t>(i)];
    w << static_cast<long>(i) << static_cast<double>(i) * Tc << in.P << in.phi_control << in.a_ca << tr.a_q_hat[i]
      << tr.a_c_hat[i] << tr.b_hat[i] << tr.eta_hat[i];
    for (auto c : applied)
      w << tr.theta(i, static_cast<Eigen::Index>(c));
    w << static_cast<long>(tr.dropped[static_cast<std::size_t>(i)]);
    if (nd)
      w << tr.N[i] << tr.D[i];
    w.EndRow();
  }
}

HarnessResult qahybrid::RunScenario(const std::string& yaml_text, const std::vector<SweepAxis>& extra_sweeps,
                                    const HarnessOptions& opts)
{
  std::vector<SweepPoint> points = ExpandSweep(yaml_text, extra_sweeps);
  const bool sweeping = points.size() > 1 || !points.front().label.empty();
  if (opts.seeds)
  {
    for (auto& p : points)
    {
      p.config.seeds = *opts.seeds;
      p.hash = ConfigHash(p.config);
    }
  }

  HarnessResult result;
  result.points.resize(points.size());
  struct Cell
  {
    std::size_t point;
    long seedIndex;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < points.size(); ++p)
  {
    PointResult& pr = result.points[p];
    pr.point = points[p];
    pr.limits = ComputeLimits(pr.point.config);
    const std::size_t nAlgo = (pr.point.config.run_one ? 1 : 0) + (pr.point.config.run_two ? 1 : 0);
    pr.per_seed.assign(nAlgo, std::vector<AlgoSummary>(static_cast<std::size_t>(pr.point.config.seeds)));
    for (long s = 0; s < pr.point.config.seeds; ++s)
      cells.push_back({p, s});
    if (opts.write_files)
      std::filesystem::create_directories(PointDir(opts.out_dir, p, sweeping));
  }

  std::vector<char> done(cells.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex errMutex;
  std::exception_ptr firstError;

  auto worker = [&]() {
    while (true)
    {
      if (opts.interrupt && opts.interrupt->load())
        return;
      const std::size_t c = next.fetch_add(1);
      if (c >= cells.size())
        return;
      try
      {
        PointResult& pr = result.points[cells[c].point];
        const ScenarioConfig& cfg = pr.point.config;
        const auto seed = static_cast<std::uint64_t>(cfg.first_seed + cells[c].seedIndex);
        const SeedRun run = RunSeed(cfg, seed);
        for (std::size_t a = 0; a < run.runs.size(); ++a)
        {
          pr.per_seed[a][static_cast<std::size_t>(cells[c].seedIndex)] = run.runs[a].summary;
          if (opts.write_files && WantTrace(cfg.traces, cells[c].seedIndex))
          {
            const std::string file = "trace_" + std::string(AlgorithmName(run.runs[a].summary.algo)) + "_" +
                                     std::to_string(seed) + ".csv";
            WriteTrace(PointDir(opts.out_dir, cells[c].point, sweeping) / file, cfg, run.data, run.runs[a]);
          }
        }
        done[c] = 1;
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(errMutex);
        if (!firstError)
          firstError = std::current_exception();
        return;
      }
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1)
  {
    worker();
  }
  else
  {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }
  if (firstError)
    std::rethrow_exception(firstError);

  // single-writer reduce over completed cells only
  std::vector<std::vector<char>> seedDone(points.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    seedDone[p].assign(static_cast<std::size_t>(result.points[p].point.config.seeds), 0);
  for (std::size_t c = 0; c < cells.size(); ++c)
  {
    if (done[c])
      seedDone[cells[c].point][static_cast<std::size_t>(cells[c].seedIndex)] = 1;
    else
      result.interrupted = true;
  }
  for (std::size_t p = 0; p < points.size(); ++p)
  {
    PointResult& pr = result.points[p];
    for (auto& algoSeeds : pr.per_seed)
    {
      std::vector<AlgoSummary> kept;
      for (std::size_t s = 0; s < algoSeeds.size(); ++s)
        if (seedDone[p][s])
          kept.push_back(algoSeeds[s]);
      algoSeeds = kept;
      for (const auto& s : kept)
        result.any_diverged = result.any_diverged || s.diverged;
      if (!kept.empty())
        pr.aggregate.push_back(Aggregate(kept));
    }
    pr.completed_seeds = pr.per_seed.empty() ? 0 : static_cast<long>(pr.per_seed.front().size());
  }

  if (!opts.write_files)
    return result;

  CsvWriter summary(opts.out_dir / "summary.csv", SummaryHeader());
  CsvWriter limits(opts.out_dir / "limits.csv",
                   {"point", "sweep", "T", "detection_1cycle", "detection_1s", "coriolis_1cycle", "contrast_1s",
                    "ca_noise_1cycle", "config_hash"});
  for (std::size_t p = 0; p < result.points.size(); ++p)
  {
    const PointResult& pr = result.points[p];
    for (std::size_t a = 0; a < pr.per_seed.size(); ++a)
    {
      for (const auto& s : pr.per_seed[a])
        WriteSummaryRow(summary, pr.point, p, std::to_string(s.seed), &s, nullptr);
      if (a < pr.aggregate.size())
      {
        WriteSummaryRow(summary, pr.point, p, "median", nullptr, &pr.aggregate[a]);
        if (!pr.aggregate[a].allan.taus.empty())
          WriteAllanCsv(PointDir(opts.out_dir, p, sweeping) /
                            ("allan_" + std::string(AlgorithmName(pr.aggregate[a].algo)) + ".csv"),
                        pr.aggregate[a].allan);
      }
    }
    limits << static_cast<long>(p) << pr.point.label << pr.limits.T << pr.limits.detection_1cycle
           << pr.limits.detection_1s << pr.limits.coriolis_1cycle << pr.limits.contrast_1s
           << pr.limits.ca_noise_1cycle << pr.point.hash;
    limits.EndRow();
    WriteBudget(PointDir(opts.out_dir, p, sweeping) / "budget.txt", pr);
  }
  return result;
}
