// Copyright 2026 The starreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "runner/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/register.hpp"
#include "floquet/dtc.hpp"
#include "runner/experiments.hpp"

namespace starreg {

namespace {

using VT = ValueType;

const std::vector<std::string> kExperiments = {"spectrum", "noon", "diffusion", "rfi", "noise",
                                               "hbac",     "qfi",  "dtc",       "chaos"};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const std::map<std::string, std::vector<KeyDef>>& schemas() {
  static const std::map<std::string, std::vector<KeyDef>> s = {
      {"",
       {{"experiment", VT::kChoice, true, "", kExperiments, "experiment to run"},
        {"seed", VT::kUInt, false, "0", {}, "master seed for every random stream"},
        {"backend", VT::kChoice, false, "auto", {"auto", "symmetric", "dense"}, "state representation"},
        {"output", VT::kString, false, "out", {}, "output directory"},
        {"threads", VT::kInt, false, "1", {}, "worker threads (results do not depend on it)"}}},
      {"register",
       {{"n_total", VT::kInt, true, "", {}, "total number of spins"},
        {"gamma_c", VT::kReal, false, shortest(kGammaP31), {}, "central gyromagnetic ratio (rad/s/T)"},
        {"gamma_a", VT::kReal, false, shortest(kGammaH1), {}, "ancilla gyromagnetic ratio (rad/s/T)"},
        {"j_ca", VT::kReal, false, "0", {}, "central-ancilla scalar coupling (Hz)"},
        {"b0", VT::kReal, false, "11.7", {}, "field (T)"},
        {"temperature", VT::kReal, false, "298", {}, "temperature (K)"},
        {"t1_c", VT::kReal, false, "", {}, "central T1 (s)"},
        {"t1_a", VT::kReal, false, "", {}, "ancilla T1 (s)"},
        {"label", VT::kString, false, "", {}, "free-form name"}}},
      {"spectrum",
       {{"channel", VT::kChoice, false, "both", {"central", "ancilla", "both"}, "observed channel"},
        {"state", VT::kChoice, false, "thermal", {"thermal", "mssm"}, "state whose spectrum is read out"},
        {"thermal_model", VT::kChoice, false, "first_order", {"first_order", "exact"}, "thermal populations"}}},
      {"noon",
       {{"input", VT::kChoice, false, "thermal", {"ground", "thermal"}, "state fed to the MSSM circuit"},
        {"thermal_model", VT::kChoice, false, "first_order", {"first_order", "exact"}, "thermal populations"}}},
      {"diffusion",
       {{"d_const", VT::kReal, true, "", {}, "diffusion constant (m^2/s)"},
        {"delta_small", VT::kReal, true, "", {}, "gradient pulse length (s)"},
        {"delta_big", VT::kReal, true, "", {}, "diffusion delay (s)"},
        {"g_z", VT::kRealList, true, "", {}, "gradient strengths (T/m)"},
        {"orders", VT::kIntList, false, "", {}, "coherence orders (default 1 and N)"},
        {"trials", VT::kUInt, false, "100000", {}, "Monte Carlo trajectories"},
        {"method", VT::kChoice, false, "both", {"closed_form", "monte_carlo", "both"}, "estimators"}}},
      {"rfi",
       {{"order", VT::kInt, false, "", {}, "coherence order (default N)"},
        {"omega_c", VT::kRealList, true, "", {}, "central nutation amplitudes of the atoms (rad/s)"},
        {"omega_a", VT::kRealList, true, "", {}, "ancilla nutation amplitudes of the atoms (rad/s)"},
        {"weights", VT::kRealList, true, "", {}, "atom probabilities (sum to 1)"},
        {"n_c", VT::kInt, false, "64", {}, "central nutation samples"},
        {"dt_c", VT::kReal, true, "", {}, "central nutation step (s)"},
        {"n_a", VT::kInt, false, "1", {}, "ancilla nutation samples"},
        {"dt_a", VT::kReal, false, "0", {}, "ancilla nutation step (s)"}}},
      {"noise",
       {{"spectrum", VT::kChoice, false, "ou", {"ou", "white"}, "noise spectrum model"},
        {"sigma", VT::kReal, false, "1", {}, "OU standard deviation (rad/s)"},
        {"tau_c", VT::kReal, false, "0.005", {}, "OU correlation time (s)"},
        {"s0", VT::kReal, false, "1", {}, "white-noise level (rad^2/s)"},
        {"kind", VT::kChoice, false, "correlated", {"correlated", "independent"}, "spatial noise model"},
        {"cross_correlation", VT::kReal, false, "1", {}, "inter-spin correlation for independent noise"},
        {"orders", VT::kIntList, false, "", {}, "coherence orders (default 1 and N)"},
        {"frequencies", VT::kRealList, true, "", {}, "filter frequencies 1/(4 tau) (Hz)"},
        {"t_max", VT::kReal, true, "", {}, "longest echo time (s)"},
        {"trials", VT::kUInt, false, "10000", {}, "noise realizations per curve"},
        {"steps_per_tau", VT::kInt, false, "8", {}, "integration steps per half echo"}}},
      {"hbac",
       {{"iterations", VT::kInt, false, "10", {}, "compression/reset rounds"},
        {"tau_hb", VT::kReal, true, "", {}, "reset wait (s)"},
        {"reset", VT::kChoice, false, "full", {"exponential", "full"}, "ancilla reset model"},
        {"ceiling", VT::kBool, false, "true", {}, "also report the all-population sorting ceiling"}}},
      {"qfi",
       {{"n_values", VT::kIntList, false, "", {}, "register sizes (default n_total)"},
        {"epsilon_a", VT::kReal, false, "", {}, "probe purity (default from the register)"},
        {"theta0", VT::kReal, false, "0.5", {}, "encoding angle (rad)"},
        {"phi0", VT::kReal, false, "0", {}, "encoding azimuth (rad)"},
        {"fd_step", VT::kReal, false, "1e-4", {}, "finite-difference step (rad)"},
        {"probability_floor", VT::kReal, false, "1e-12", {}, "smallest outcome probability counted"},
        {"copies", VT::kInt, false, "1", {}, "independent repetitions in the Cramer-Rao bound"}}},
      {"dtc",
       {{"jt", VT::kReal, false, shortest(kDefaultDtcJT), {}, "Ising phase J*T"},
        {"period", VT::kReal, false, "0.001", {}, "Floquet period T (s)"},
        {"errors", VT::kRealList, true, "", {}, "pulse errors e (rad, 'pi' suffix allowed)"},
        {"n_periods", VT::kInt, false, "200", {}, "stroboscopic samples after the start"},
        {"observable", VT::kChoice, false, "total", {"central", "ancillas", "total"}, "measured I_z"},
        {"initial", VT::kChoice, false, "polarized", {"polarized", "thermal"}, "initial state"},
        {"window", VT::kChoice, false, "rectangular", {"rectangular", "hann"}, "DFT window"},
        {"spectra", VT::kBool, false, "false", {}, "also write dtc_spectrum.csv"}}},
      {"chaos",
       {{"mode", VT::kChoice, false, "map", {"map", "sweep"}, "phase-space map or ancilla-count sweep"},
        {"k", VT::kRealList, true, "", {}, "chaoticity values"},
        {"j_ca", VT::kReal, false, "50", {}, "coupling used to report the kick interval (Hz)"},
        {"n_kicks", VT::kInt, false, "200", {}, "kicks per trajectory"},
        {"average_window", VT::kInt, false, "100", {}, "trailing kicks averaged"},
        {"n_theta", VT::kInt, false, "64", {}, "polar grid points (map)"},
        {"n_phi", VT::kInt, false, "64", {}, "azimuth grid points (map)"},
        {"theta", VT::kReal, false, "0.5pi", {}, "initial polar angle (sweep)"},
        {"phi", VT::kReal, false, "0.5pi", {}, "initial azimuth (sweep)"},
        {"ancilla_counts", VT::kIntList, false, "1,2,3,4,5,6,7,8,9", {}, "ancilla counts (sweep)"}}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string nearest_name(const std::string& key, const std::vector<std::string>& names) {
  std::string best;
  std::size_t dist = SIZE_MAX;
  for (const auto& n : names) {
    const std::size_t d = levenshtein(key, n);
    if (d < dist) dist = d, best = n;
  }
  return best;
}

[[noreturn]] void unknown_key(const std::string& section, const std::string& key) {
  std::vector<std::string> names;
  for (const auto& k : section_schema(section)) names.push_back(k.name);
  const std::string where = section.empty() ? "global keys" : "[" + section + "]";
  fail(ErrorCode::kUnknownKey, "unknown key '" + key + "' in " + where + "; did you mean '" +
                                   nearest_name(key, names) + "'?");
}

const KeyDef& find_key(const std::string& section, const std::string& key) {
  for (const auto& k : section_schema(section))
    if (k.name == key) return k;
  unknown_key(section, key);
}

double parse_real(const std::string& text) {
  std::string t = trim(text);
  double scale = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    t = trim(t.substr(0, t.size() - 2));
    if (t.empty()) t = "1";
    if (!t.empty() && t.back() == '*') t = trim(t.substr(0, t.size() - 1));
  }
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v * scale))
    throw std::invalid_argument("expected a finite real number, got '" + text + "'");
  return v * scale;
}

template <typename T>
T parse_integer(const std::string& text) {
  const std::string t = trim(text);
  T v{};
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty() || std::any_of(out.begin(), out.end(), [](const std::string& s) { return s.empty(); }))
    throw std::invalid_argument("expected a comma-separated list, got '" + text + "'");
  return out;
}

ConfigValue parse_value(const KeyDef& def, const std::string& text) {
  switch (def.type) {
    case VT::kInt: return parse_integer<std::int64_t>(text);
    case VT::kUInt: return parse_integer<std::uint64_t>(text);
    case VT::kReal: return parse_real(text);
    case VT::kRealList: {
      std::vector<double> v;
      for (const auto& s : split_list(text)) v.push_back(parse_real(s));
      return v;
    }
    case VT::kIntList: {
      std::vector<std::int64_t> v;
      for (const auto& s : split_list(text)) v.push_back(parse_integer<std::int64_t>(s));
      return v;
    }
    case VT::kString: return trim(text);
    case VT::kBool: {
      const std::string t = trim(text);
      if (t == "true") return true;
      if (t == "false") return false;
      throw std::invalid_argument("expected true or false, got '" + text + "'");
    }
    case VT::kChoice: {
      const std::string t = trim(text);
      if (std::find(def.choices.begin(), def.choices.end(), t) == def.choices.end()) {
        std::string all;
        for (const auto& c : def.choices) all += (all.empty() ? "" : ", ") + c;
        throw std::invalid_argument("expected one of {" + all + "}, got '" + text + "'");
      }
      return t;
    }
  }
  throw std::invalid_argument("unsupported value type");
}

ConfigValue parse_checked(const KeyDef& def, const std::string& section, const std::string& text, int line) {
  try {
    return parse_value(def, text);
  } catch (const std::invalid_argument& e) {
    const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
    const std::string key = section.empty() ? def.name : section + "." + def.name;
    fail(ErrorCode::kParseError, where + key + ": " + e.what());
  }
}

std::string render_value(const ConfigValue& v) {
  struct {
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(std::uint64_t x) const { return std::to_string(x); }
    std::string operator()(double x) const { return shortest(x); }
    std::string operator()(const std::vector<double>& x) const {
      std::string s;
      for (double d : x) s += (s.empty() ? "" : ", ") + shortest(d);
      return s;
    }
    std::string operator()(const std::vector<std::int64_t>& x) const {
      std::string s;
      for (auto d : x) s += (s.empty() ? "" : ", ") + std::to_string(d);
      return s;
    }
    std::string operator()(const std::string& x) const { return x; }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
  } visitor;
  return std::visit(visitor, v);
}

void check_section_allowed(const std::string& section, const std::string& experiment) {
  if (section.empty() || section == "register") return;
  section_schema(section);
  if (!experiment.empty() && section != experiment)
    fail(ErrorCode::kUnknownKey, "section [" + section + "] does not belong to experiment '" + experiment + "'");
}

}  // namespace

std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

const std::vector<std::string>& experiment_names() { return kExperiments; }

const std::vector<KeyDef>& section_schema(const std::string& section) {
  const auto& s = schemas();
  const auto it = s.find(section);
  if (it == s.end()) {
    std::vector<std::string> names;
    for (const auto& [n, _] : s)
      if (!n.empty()) names.push_back(n);
    fail(ErrorCode::kUnknownKey, "unknown section [" + section + "]; did you mean [" + nearest_name(section, names) + "]?");
  }
  return it->second;
}

std::string ExperimentConfig::experiment() const { return get_string("", "experiment"); }

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

const ConfigValue& ExperimentConfig::lookup(const std::string& section, const std::string& key,
                                            ConfigValue& scratch) const {
  const KeyDef& def = find_key(section, key);
  const auto s = sections.find(section);
  if (s != sections.end()) {
    const auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  require(!def.default_text.empty(), ErrorCode::kMissingRequired,
          (section.empty() ? key : section + "." + key) + " is not set and has no default");
  scratch = parse_value(def, def.default_text);
  return scratch;
}

std::int64_t ExperimentConfig::get_int(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<std::int64_t>(lookup(section, key, s));
}
std::uint64_t ExperimentConfig::get_uint(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<std::uint64_t>(lookup(section, key, s));
}
double ExperimentConfig::get_real(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<double>(lookup(section, key, s));
}
std::vector<double> ExperimentConfig::get_reals(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<std::vector<double>>(lookup(section, key, s));
}
std::vector<std::int64_t> ExperimentConfig::get_ints(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<std::vector<std::int64_t>>(lookup(section, key, s));
}
std::string ExperimentConfig::get_string(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<std::string>(lookup(section, key, s));
}
bool ExperimentConfig::get_bool(const std::string& section, const std::string& key) const {
  ConfigValue s;
  return std::get<bool>(lookup(section, key, s));
}

namespace {

// Re-raises schema lookup failures with the offending line number.
template <typename F>
decltype(auto) at_line(const std::string& at, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), at + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    const std::string at = "line " + std::to_string(line) + ": ";
    if (l.front() == '[') {
      require(l.back() == ']' && l.size() > 2, ErrorCode::kParseError, at + "malformed section header '" + l + "'");
      section = trim(l.substr(1, l.size() - 2));
      at_line(at, [&]() -> decltype(auto) { return section_schema(section); });
      require(!cfg.sections.count(section), ErrorCode::kParseError, at + "section [" + section + "] appears twice");
      cfg.sections[section];
      continue;
    }
    const auto eq = l.find('=');
    require(eq != std::string::npos, ErrorCode::kParseError, at + "expected 'key = value', got '" + l + "'");
    const std::string key = trim(l.substr(0, eq));
    require(!key.empty(), ErrorCode::kParseError, at + "missing key before '='");
    const KeyDef& def = at_line(at, [&]() -> const KeyDef& { return find_key(section, key); });
    require(!cfg.has(section, key), ErrorCode::kParseError, at + "key '" + key + "' is set twice");
    cfg.sections[section][key] = parse_checked(def, section, l.substr(eq + 1), line);
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::kIoError, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void set_config_value(ExperimentConfig& config, const std::string& section, const std::string& key,
                      const std::string& text) {
  const KeyDef& def = find_key(section, key);
  ExperimentConfig next = config;
  next.sections[section][key] = parse_checked(def, section, text, 0);
  validate_config(next);
  config = std::move(next);
}

std::string render_config(const ExperimentConfig& config, bool resolved) {
  std::string out;
  const auto emit = [&](const std::string& section) {
    const auto s = config.sections.find(section);
    for (const KeyDef& def : section_schema(section)) {
      if (s != config.sections.end() && s->second.count(def.name)) {
        out += def.name + " = " + render_value(s->second.at(def.name)) + "\n";
      } else if (resolved && !def.default_text.empty()) {
        out += def.name + " = " + render_value(parse_value(def, def.default_text)) + "\n";
      }
    }
  };
  emit("");
  for (const auto& [name, _] : config.sections) {
    if (name.empty()) continue;
    out += "\n[" + name + "]\n";
    emit(name);
  }
  if (resolved) {
    const std::string exp = config.has("", "experiment") ? config.experiment() : "";
    if (!exp.empty() && !config.sections.count(exp)) {
      out += "\n[" + exp + "]\n";
      emit(exp);
    }
  }
  return out;
}

void validate_config(const ExperimentConfig& config) {
  require(config.has("", "experiment"), ErrorCode::kMissingRequired, "global key 'experiment' is required");
  const std::string exp = config.experiment();
  for (const auto& [name, _] : config.sections) check_section_allowed(name, exp);
  require(config.sections.count("register") > 0, ErrorCode::kMissingRequired, "section [register] is required");
  for (const std::string& section : {std::string(), std::string("register"), exp}) {
    for (const KeyDef& def : section_schema(section))
      require(!def.required || config.has(section, def.name), ErrorCode::kMissingRequired,
              (section.empty() ? def.name : section + "." + def.name) + " is required");
  }
  require(config.get_int("", "threads") >= 1, ErrorCode::kInvalidArgument, "threads must be at least 1");
  plan_experiment(config);
}

}  // namespace starreg
