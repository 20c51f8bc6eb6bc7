/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

using namespace qahybrid;

namespace
{

/// Map node reader that rejects keys it was not asked about
class Section
{
public:
  Section(const YAML::Node& node, std::string path) : m_node(node), m_path(std::move(path))
  {
    if (m_node && !m_node.IsNull() && !m_node.IsMap())
      throw ConfigError(Where() + "expected a mapping");
  }

  ~Section() noexcept(false)
  {
    if (std::uncaught_exceptions() == 0)
      Finish();
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  bool Has(const char* key)
  {
    m_known.insert(key);
    return m_node && m_node.IsMap() && m_node[key] && !m_node[key].IsNull();
  }

  YAML::Node Raw(const char* key)
  {
    m_known.insert(key);
    return (m_node && m_node.IsMap()) ? m_node[key] : YAML::Node();
  }

  std::string Child(const char* key) const { return m_path.empty() ? key : m_path + "." + key; }

  template<typename T>
  void Get(const char* key, T& out)
  {
    if (!Has(key))
      return;
    try
    {
      out = m_node[key].as<T>();
    }
    catch (const YAML::Exception&)
    {
      throw ConfigError(Child(key) + ": invalid value '" + Scalar(m_node[key]) + "'");
    }
  }

  void GetPositive(const char* key, double& out)
  {
    Get(key, out);
    if (!(out > 0) || !std::isfinite(out))
      throw ConfigError(Child(key) + ": must be positive");
  }

  void GetNonNegative(const char* key, double& out)
  {
    Get(key, out);
    if (!(out >= 0) || !std::isfinite(out))
      throw ConfigError(Child(key) + ": must be non-negative");
  }

  void GetFinite(const char* key, double& out)
  {
    Get(key, out);
    if (!std::isfinite(out))
      throw ConfigError(Child(key) + ": must be finite");
  }

  template<typename E>
  void GetEnum(const char* key, E& out, std::initializer_list<std::pair<const char*, E>> choices)
  {
    if (!Has(key))
      return;
    const std::string v = Scalar(m_node[key]);
    for (const auto& [name, value] : choices)
    {
      if (v == name)
      {
        out = value;
        return;
      }
    }
    std::string allowed;
    for (const auto& c : choices)
      allowed += std::string(allowed.empty() ? "" : ", ") + c.first;
    throw ConfigError(Child(key) + ": '" + v + "' is not one of " + allowed);
  }

  void Finish()
  {
    if (!m_node || !m_node.IsMap())
      return;
    for (const auto& kv : m_node)
    {
      const std::string k = kv.first.as<std::string>();
      if (!m_known.count(k))
        throw ConfigError("unknown key '" + Child(k.c_str()) + "'");
    }
    m_node = YAML::Node(); // report once
  }

  static std::string Scalar(const YAML::Node& n)
  {
    if (n.IsScalar())
      return n.Scalar();
    std::ostringstream os;
    os << n;
    return os.str();
  }

private:
  std::string Where() const { return m_path.empty() ? std::string() : m_path + ": "; }

  YAML::Node m_node;
  std::string m_path;
  std::set<std::string> m_known;
};

void ParseInterferometer(const YAML::Node& n, InterferometerConfigd& c)
{
  Section s(n, "interferometer");
  s.GetPositive("k_eff", c.k_eff);
  s.GetPositive("T", c.T);
  s.GetPositive("Tc", c.Tc);
  s.GetPositive("C0", c.C0);
  s.GetFinite("P0", c.P0);
  s.GetNonNegative("sigma_v", c.sigma_v);
  s.GetNonNegative("sigma_P", c.sigma_P);
  s.Finish();
  if (!c.Valid())
    throw ConfigError("interferometer: need Tc >= 2T, 0 < C0 <= 1 and P0 +- C0/2 within [0, 1]");
}

void ParseTruth(const YAML::Node& n, TruthParamsd& t)
{
  Section s(n, "truth");
  s.GetNonNegative("sigma_a", t.sigma_a);
  s.GetNonNegative("sigma_ax", t.sigma_ax);
  s.GetNonNegative("sigma_ay", t.sigma_ay);
  s.GetFinite("b", t.b);
  s.GetFinite("bias_drift", t.bias_drift);
  s.GetPositive("eta", t.eta);
  s.GetNonNegative("sigma_delta_a", t.sigma_delta_a);
  s.GetFinite("eta_x", t.eta_x);
  s.GetFinite("eta_y", t.eta_y);
  s.GetNonNegative("eta_prime", t.eta_prime);
  s.GetNonNegative("eta_dprime", t.eta_dprime);
  if (s.Has("sigma_omega"))
  {
    const YAML::Node w = s.Raw("sigma_omega");
    if (!w.IsSequence() || w.size() != 3)
      throw ConfigError("truth.sigma_omega: expected [x, y, z]");
    try
    {
      t.sigma_omega_x = w[0].as<double>();
      t.sigma_omega_y = w[1].as<double>();
      t.sigma_omega_z = w[2].as<double>();
    }
    catch (const YAML::Exception&)
    {
      throw ConfigError("truth.sigma_omega: invalid number");
    }
    if (t.sigma_omega_x < 0 || t.sigma_omega_y < 0 || t.sigma_omega_z < 0)
      throw ConfigError("truth.sigma_omega: must be non-negative");
  }
  s.GetFinite("v_x0", t.v_x0);
  s.GetFinite("v_y0", t.v_y0);
  if (s.Has("eta_x_step"))
  {
    Section st(s.Raw("eta_x_step"), s.Child("eta_x_step"));
    st.GetFinite("fraction", t.eta_x_step_time);
    st.GetFinite("factor", t.eta_x_step_factor);
    st.Finish();
  }
  s.Finish();
}

void ParseGeneration(const YAML::Node& n, GenerationConfig& g)
{
  Section s(n, "generation");
  s.GetEnum("mode", g.mode, {{"per_cycle", GenerationMode::PerCycle}, {"stream", GenerationMode::Stream}});
  s.Get("cycles", g.cycles);
  if (g.cycles < 32)
    throw ConfigError("generation.cycles: need at least 32");
  s.GetPositive("rate", g.rate);
  s.Get("ca_filter", g.ca_filter);
  s.GetNonNegative("band_z", g.band_z);
  s.GetNonNegative("band_xy", g.band_xy);
  s.GetNonNegative("band_omega", g.band_omega);
  if (s.Has("turns"))
  {
    const YAML::Node list = s.Raw("turns");
    if (!list.IsSequence())
      throw ConfigError("generation.turns: expected a list");
    for (std::size_t i = 0; i < list.size(); ++i)
    {
      TurnFraction tf;
      Section ts(list[i], "generation.turns[" + std::to_string(i) + "]");
      ts.GetNonNegative("start", tf.start);
      ts.GetNonNegative("duration", tf.duration);
      ts.GetFinite("accel_x", tf.accel_x);
      ts.Finish();
      g.turns.push_back(tf);
    }
  }
  s.Finish();
}

void ParseControl(const YAML::Node& n, ModulationSchedule& m)
{
  Section s(n, "control");
  s.GetEnum("modulation", m.mode,
            {{"none", ModulationMode::None},
             {"three_step", ModulationMode::ThreeStep},
             {"uniform_random", ModulationMode::UniformRandom}});
  s.GetFinite("amplitude", m.amplitude);
  s.Get("seed", m.seed);
  s.Finish();
}

void ParseEstimator(const YAML::Node& n, EstimatorConfig& e)
{
  Section s(n, "estimator");
  s.GetFinite("b0", e.b0);
  s.GetPositive("eta0", e.eta0);
  s.Get("contrast_correction", e.contrast_correction);
  if (s.Has("coefficients"))
  {
    const YAML::Node coeffs = s.Raw("coefficients");
    if (!coeffs.IsMap())
      throw ConfigError("estimator.coefficients: expected a mapping");
    for (const auto& kv : coeffs)
    {
      const std::string name = kv.first.as<std::string>();
      const auto which = CoefficientFromName(name);
      if (!which)
        throw ConfigError("unknown key 'estimator.coefficients." + name + "'");
      CoefficientConfig& cc = e.coefficients[static_cast<std::size_t>(*which)];
      cc.mode = CoefficientMode::Estimated;
      Section cs(kv.second, "estimator.coefficients." + name);
      cs.GetEnum("mode", cc.mode,
                 {{"off", CoefficientMode::Off},
                  {"fixed", CoefficientMode::Fixed},
                  {"estimated", CoefficientMode::Estimated}});
      cs.GetFinite("initial", cc.initial);
      cs.GetFinite("gain_one", cc.gain_one);
      cs.GetFinite("gain_two", cc.gain_two);
      cs.Finish();
    }
  }
  s.Finish();
}

void ParseAlgorithms(const YAML::Node& n, ScenarioConfig& c)
{
  if (!n || n.IsNull())
    return;
  if (!n.IsSequence() || n.size() == 0)
    throw ConfigError("algorithms: expected a non-empty list of 'one' / 'two'");
  c.run_one = c.run_two = false;
  for (const auto& item : n)
  {
    const std::string v = item.as<std::string>();
    if (v == "one")
      c.run_one = true;
    else if (v == "two")
      c.run_two = true;
    else
      throw ConfigError("algorithms: '" + v + "' is not one of one, two");
  }
}

void ParseAlgoOne(const YAML::Node& n, AlgoOneConfig& a)
{
  Section s(n, "algo_one");
  s.GetPositive("gain_b", a.gain_b);
  s.GetPositive("gain_eta", a.gain_eta);
  s.GetPositive("average_time", a.average_time);
  s.Get("warmup_cycles", a.warmup_cycles);
  if (a.warmup_cycles < 0)
    throw ConfigError("algo_one.warmup_cycles: must be non-negative");
  s.Get("branch_window", a.branch_window);
  if (a.branch_window < 0)
    throw ConfigError("algo_one.branch_window: must be non-negative");
  s.GetEnum("regularization", a.regularization,
            {{"pseudo_inverse", ScaleRegularization::PseudoInverse}, {"direct", ScaleRegularization::Direct}});
  s.GetFinite("C_error", a.C_error);
  if (a.C_error <= -1)
    throw ConfigError("algo_one.C_error: assumed contrast must stay positive");
  s.GetFinite("P0_error", a.P0_error);
  s.Finish();
}

void ParseAlgoTwo(const YAML::Node& n, AlgoTwoConfig& a)
{
  Section s(n, "algo_two");
  s.GetPositive("gain_b", a.gain_b);
  s.GetPositive("gain_eta", a.gain_eta);
  s.GetPositive("average_time", a.average_time);
  s.Get("warmup_cycles", a.warmup_cycles);
  if (a.warmup_cycles < 0)
    throw ConfigError("algo_two.warmup_cycles: must be non-negative");
  s.GetEnum("scale_regressor", a.scale_form,
            {{"sine", ScaleRegressorForm::Sine}, {"cosine", ScaleRegressorForm::Cosine}});
  s.Finish();
}

void ParseAnalysis(const YAML::Node& n, AnalysisConfig& a)
{
  Section s(n, "analysis");
  s.GetPositive("fit_start_loops", a.fit_start_loops);
  s.Get("max_tau_divisor", a.max_tau_divisor);
  if (a.max_tau_divisor < 2)
    throw ConfigError("analysis.max_tau_divisor: must be at least 2");
  s.GetNonNegative("residual_start", a.residual_start);
  s.GetNonNegative("average_start", a.average_start);
  if (a.residual_start >= 1 || a.average_start >= 1)
    throw ConfigError("analysis: start fractions must be below 1");
  s.Get("kink_window", a.kink_window);
  if (a.kink_window < 1)
    throw ConfigError("analysis.kink_window: must be positive");
  s.Finish();
}

void ParseRun(const YAML::Node& n, ScenarioConfig& c)
{
  Section s(n, "run");
  s.Get("seeds", c.seeds);
  s.Get("first_seed", c.first_seed);
  if (c.seeds < 1)
    throw ConfigError("run.seeds: must be at least 1");
  if (c.first_seed < 0)
    throw ConfigError("run.first_seed: must be non-negative");
  s.Finish();
}

void ParseOutput(const YAML::Node& n, ScenarioConfig& c)
{
  Section s(n, "output");
  s.GetEnum("traces", c.traces, {{"all", TraceOutput::All}, {"first", TraceOutput::First}, {"none", TraceOutput::None}});
  s.Finish();
}

void ParseSweep(const YAML::Node& n, ScenarioConfig& c)
{
  if (!n || n.IsNull())
    return;
  if (!n.IsSequence())
    throw ConfigError("sweep: expected a list of {key, values}");
  for (std::size_t i = 0; i < n.size(); ++i)
  {
    SweepAxis axis;
    Section s(n[i], "sweep[" + std::to_string(i) + "]");
    s.Get("key", axis.key);
    const YAML::Node values = s.Raw("values");
    s.Finish();
    if (axis.key.empty() || !values || !values.IsSequence() || values.size() == 0)
      throw ConfigError("sweep[" + std::to_string(i) + "]: needs a key and a non-empty values list");
    for (const auto& v : values)
      axis.values.push_back(Section::Scalar(v));
    c.sweep.push_back(std::move(axis));
  }
}

std::string FormatDouble(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void SetPath(YAML::Node node, const std::vector<std::string>& parts, std::size_t idx, const YAML::Node& value,
             const std::string& key)
{
  if (idx + 1 == parts.size())
  {
    node[parts[idx]] = value;
    return;
  }
  const YAML::Node existing = node[parts[idx]];
  if (!existing.IsDefined() || existing.IsNull())
    node[parts[idx]] = YAML::Node(YAML::NodeType::Map);
  YAML::Node child = node[parts[idx]];
  if (!child.IsMap())
    throw ConfigError("override '" + key + "': '" + parts[idx] + "' is not a section");
  SetPath(child, parts, idx + 1, value, key);
}

std::vector<std::string> SplitPath(const std::string& key)
{
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, '.'))
  {
    if (item.empty())
      throw ConfigError("malformed key '" + key + "'");
    parts.push_back(item);
  }
  if (parts.empty())
    throw ConfigError("empty override key");
  return parts;
}

} // namespace

AlgoOneOptions ScenarioConfig::OneOptions() const
{
  AlgoOneOptions o;
  o.gain_b = algo_one.gain_b;
  o.gain_eta = algo_one.gain_eta;
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    const double g = estimator.coefficients[j].gain_one;
    o.gain_theta[j] = g > 0 ? g : algo_one.gain_eta;
  }
  o.average_time = algo_one.average_time;
  o.warmup_cycles = algo_one.warmup_cycles;
  o.branch_window = algo_one.branch_window;
  o.C_used = AssumedContrast();
  o.P0_used = interferometer.P0 + algo_one.P0_error;
  o.contrast_correction = estimator.contrast_correction;
  o.regularization = algo_one.regularization;
  return o;
}

AlgoTwoOptions ScenarioConfig::TwoOptions() const
{
  AlgoTwoOptions o;
  o.gain_b = algo_two.gain_b;
  o.gain_eta = algo_two.gain_eta;
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    const double g = estimator.coefficients[j].gain_two;
    o.gain_theta[j] = g > 0 ? g : algo_two.gain_eta;
  }
  o.average_time = algo_two.average_time;
  o.warmup_cycles = algo_two.warmup_cycles;
  o.scale_form = algo_two.scale_form;
  o.contrast_correction = estimator.contrast_correction;
  o.contrast_reference = AssumedContrast();
  return o;
}

EstimatorState ScenarioConfig::InitialState() const
{
  EstimatorState s;
  s.b_hat = estimator.b0;
  s.eta_hat = estimator.eta0;
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    s.mode[j] = estimator.coefficients[j].mode;
    s.theta[j] = estimator.coefficients[j].initial;
  }
  return s;
}

ScenarioConfig qahybrid::ParseConfig(const std::string& yaml_text)
{
  YAML::Node root;
  try
  {
    root = YAML::Load(yaml_text);
  }
  catch (const YAML::Exception& e)
  {
    throw ConfigError(std::string("YAML syntax: ") + e.what());
  }
  ScenarioConfig c;
  Section s(root, "");
  if (!root || !root.IsMap())
    throw ConfigError("config must be a mapping");
  s.Get("scenario", c.name);
  s.Get("description", c.description);
  ParseInterferometer(s.Raw("interferometer"), c.interferometer);
  ParseTruth(s.Raw("truth"), c.truth);
  ParseGeneration(s.Raw("generation"), c.generation);
  ParseControl(s.Raw("control"), c.modulation);
  ParseEstimator(s.Raw("estimator"), c.estimator);
  ParseAlgorithms(s.Raw("algorithms"), c);
  ParseAlgoOne(s.Raw("algo_one"), c.algo_one);
  ParseAlgoTwo(s.Raw("algo_two"), c.algo_two);
  ParseAnalysis(s.Raw("analysis"), c.analysis);
  ParseRun(s.Raw("run"), c);
  ParseOutput(s.Raw("output"), c);
  ParseSweep(s.Raw("sweep"), c);
  s.Finish();

  if (!c.truth.Valid())
    throw ConfigError("truth: invalid parameters");
  if (c.AssumedContrast() > 1)
    throw ConfigError("algo_one.C_error: assumed contrast exceeds 1");
  if (c.generation.mode == GenerationMode::Stream)
  {
    const double perT = c.interferometer.T * c.generation.rate;
    const double perTc = c.interferometer.Tc * c.generation.rate;
    if (std::abs(perT - std::round(perT)) > 1e-6 * perT || std::abs(perTc - std::round(perTc)) > 1e-6 * perTc)
      throw ConfigError("generation.rate: T and Tc must be whole numbers of samples");
  }
  return c;
}

ScenarioConfig qahybrid::LoadConfigFile(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string qahybrid::ApplyOverride(const std::string& yaml_text, const std::string& key, const std::string& value)
{
  YAML::Node root = YAML::Load(yaml_text);
  if (!root || !root.IsMap())
    throw ConfigError("config must be a mapping");
  const auto parts = SplitPath(key);
  YAML::Node parsed;
  try
  {
    parsed = YAML::Load(value);
  }
  catch (const YAML::Exception&)
  {
    parsed = YAML::Node(value);
  }
  SetPath(root, parts, 0, parsed, key);
  std::ostringstream os;
  os << root;
  const std::string text = os.str();
  ParseConfig(text); // surfaces unknown keys and bad values
  return text;
}

SweepAxis qahybrid::ParseSweepSpec(const std::string& spec)
{
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
    throw ConfigError("sweep '" + spec + "': expected key=v1,v2,...");
  SweepAxis axis;
  axis.key = spec.substr(0, eq);
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ','))
  {
    if (item.empty())
      throw ConfigError("sweep '" + spec + "': empty value");
    axis.values.push_back(item);
  }
  return axis;
}

std::string qahybrid::CanonicalText(const ScenarioConfig& c)
{
  std::ostringstream os;
  auto kv = [&](const char* k, double v) { os << k << '=' << FormatDouble(v) << '\n'; };
  os << "scenario=" << c.name << '\n';
  const auto& i = c.interferometer;
  kv("interferometer.k_eff", i.k_eff);
  kv("interferometer.T", i.T);
  kv("interferometer.Tc", i.Tc);
  kv("interferometer.C0", i.C0);
  kv("interferometer.P0", i.P0);
  kv("interferometer.sigma_v", i.sigma_v);
  kv("interferometer.sigma_P", i.sigma_P);
  const auto& t = c.truth;
  kv("truth.sigma_a", t.sigma_a);
  kv("truth.sigma_ax", t.sigma_ax);
  kv("truth.sigma_ay", t.sigma_ay);
  kv("truth.b", t.b);
  kv("truth.bias_drift", t.bias_drift);
  kv("truth.eta", t.eta);
  kv("truth.sigma_delta_a", t.sigma_delta_a);
  kv("truth.eta_x", t.eta_x);
  kv("truth.eta_y", t.eta_y);
  kv("truth.eta_prime", t.eta_prime);
  kv("truth.eta_dprime", t.eta_dprime);
  kv("truth.sigma_omega_x", t.sigma_omega_x);
  kv("truth.sigma_omega_y", t.sigma_omega_y);
  kv("truth.sigma_omega_z", t.sigma_omega_z);
  kv("truth.v_x0", t.v_x0);
  kv("truth.v_y0", t.v_y0);
  kv("truth.eta_x_step.fraction", t.eta_x_step_time);
  kv("truth.eta_x_step.factor", t.eta_x_step_factor);
  const auto& g = c.generation;
  os << "generation.mode=" << (g.mode == GenerationMode::Stream ? "stream" : "per_cycle") << '\n';
  os << "generation.cycles=" << g.cycles << '\n';
  kv("generation.rate", g.rate);
  os << "generation.ca_filter=" << g.ca_filter << '\n';
  kv("generation.band_z", g.band_z);
  kv("generation.band_xy", g.band_xy);
  kv("generation.band_omega", g.band_omega);
  for (const auto& turn : g.turns)
    os << "generation.turn=" << FormatDouble(turn.start) << ',' << FormatDouble(turn.duration) << ','
       << FormatDouble(turn.accel_x) << '\n';
  os << "control.modulation=" << static_cast<int>(c.modulation.mode) << '\n';
  kv("control.amplitude", c.modulation.amplitude);
  os << "control.seed=" << c.modulation.seed << '\n';
  kv("estimator.b0", c.estimator.b0);
  kv("estimator.eta0", c.estimator.eta0);
  os << "estimator.contrast_correction=" << c.estimator.contrast_correction << '\n';
  for (std::size_t j = 0; j < kNumCoefficients; ++j)
  {
    const auto& cc = c.estimator.coefficients[j];
    os << "estimator.coefficients." << kCoefficientNames[j] << '=' << static_cast<int>(cc.mode) << ','
       << FormatDouble(cc.initial) << ',' << FormatDouble(cc.gain_one) << ',' << FormatDouble(cc.gain_two) << '\n';
  }
  os << "algorithms=" << c.run_one << c.run_two << '\n';
  kv("algo_one.gain_b", c.algo_one.gain_b);
  kv("algo_one.gain_eta", c.algo_one.gain_eta);
  kv("algo_one.average_time", c.algo_one.average_time);
  os << "algo_one.warmup_cycles=" << c.algo_one.warmup_cycles << '\n';
  os << "algo_one.branch_window=" << c.algo_one.branch_window << '\n';
  os << "algo_one.regularization=" << static_cast<int>(c.algo_one.regularization) << '\n';
  kv("algo_one.C_error", c.algo_one.C_error);
  kv("algo_one.P0_error", c.algo_one.P0_error);
  kv("algo_two.gain_b", c.algo_two.gain_b);
  kv("algo_two.gain_eta", c.algo_two.gain_eta);
  kv("algo_two.average_time", c.algo_two.average_time);
  os << "algo_two.warmup_cycles=" << c.algo_two.warmup_cycles << '\n';
  os << "algo_two.scale_regressor=" << static_cast<int>(c.algo_two.scale_form) << '\n';
  kv("analysis.fit_start_loops", c.analysis.fit_start_loops);
  os << "analysis.max_tau_divisor=" << c.analysis.max_tau_divisor << '\n';
  kv("analysis.residual_start", c.analysis.residual_start);
  kv("analysis.average_start", c.analysis.average_start);
  os << "analysis.kink_window=" << c.analysis.kink_window << '\n';
  os << "run.seeds=" << c.seeds << '\n';
  os << "run.first_seed=" << c.first_seed << '\n';
  return os.str();
}

std::string qahybrid::ConfigHash(const ScenarioConfig& cfg)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : CanonicalText(cfg))
  {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path qahybrid::PresetDirectory()
{
  return std::filesystem::path(QAHYBRID_PRESET_DIR);
}

std::filesystem::path qahybrid::PresetPath(const std::string& name)
{
  return PresetDirectory() / (name + ".yaml");
}
