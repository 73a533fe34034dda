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

#include "runner/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "chaos/kicked_top.hpp"
#include "core/error.hpp"
#include "floquet/dtc.hpp"
#include "prep/state_prep.hpp"
#include "protocols/diffusion.hpp"
#include "protocols/hbac.hpp"
#include "protocols/noise.hpp"
#include "protocols/rfi.hpp"
#include "qfi/qfi.hpp"

#ifndef STARREG_VERSION
#define STARREG_VERSION "unknown"
#endif

namespace starreg {

namespace {

// Largest register size accepted by QFI sweeps. The epsilon_A^2 (N-1) law is
// only claimed for registers up to this size.
constexpr int kQfiMaxSweepSize = 37;

struct Context {
  const ExperimentConfig& cfg;
  RegisterSpec spec;
  Backend backend;
  std::uint64_t seed;
  int threads;
  const std::string& exp;

  Register reg() const { return Register(spec); }
};

RegisterSpec register_spec(const ExperimentConfig& c) {
  RegisterSpec s;
  const std::int64_t n = c.get_int("register", "n_total");
  require(n >= 2 && n <= kSymmetricMaxQubits, ErrorCode::kInvalidSpec,
          "register.n_total: must lie in [2, " + std::to_string(kSymmetricMaxQubits) + "]");
  s.n_total = static_cast<int>(n);
  s.gamma_c = c.get_real("register", "gamma_c");
  s.gamma_a = c.get_real("register", "gamma_a");
  s.j_ca = c.get_real("register", "j_ca");
  s.b0 = c.get_real("register", "b0");
  s.temperature = c.get_real("register", "temperature");
  if (c.has("register", "t1_c")) s.t1_c = c.get_real("register", "t1_c");
  if (c.has("register", "t1_a")) s.t1_a = c.get_real("register", "t1_a");
  if (c.has("register", "label")) s.label = c.get_string("register", "label");
  return s;
}

int to_int(std::int64_t v, const std::string& key, std::int64_t lo, std::int64_t hi = INT32_MAX) {
  require(v >= lo && v <= hi, ErrorCode::kInvalidArgument,
          key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::vector<int> orders_of(const Context& c, const std::string& key) {
  std::vector<int> out;
  if (!c.cfg.has(c.exp, key)) return {1, c.spec.n_total};
  for (auto q : c.cfg.get_ints(c.exp, key)) {
    const int v = to_int(q, c.exp + "." + key, -c.spec.n_total, c.spec.n_total);
    const auto valid = coherence_orders(c.spec.n_total);
    require(v == 1 || std::find(valid.begin(), valid.end(), v) != valid.end(), ErrorCode::kNoSuchOrder,
            c.exp + "." + key + ": order " + std::to_string(v) + " does not exist for N = " + std::to_string(c.spec.n_total));
    out.push_back(v);
  }
  return out;
}

ThermalModel thermal_model(const Context& c) {
  return c.cfg.get_string(c.exp, "thermal_model") == "exact" ? ThermalModel::kExact : ThermalModel::kFirstOrder;
}

using Runner = std::function<ExperimentResult(const Context&, bool)>;

ExperimentResult run_spectrum(const Context& c, bool dry) {
  const Register reg = c.reg();
  make_layout(reg, c.backend);
  if (dry) return {};
  State st = thermal_state(reg, c.backend, thermal_model(c));
  if (c.cfg.get_string(c.exp, "state") == "mssm") st = prepare_mssm(st);
  const std::string ch = c.cfg.get_string(c.exp, "channel");
  Table t{c.exp, {"channel", "h", "frequency_hz", "amplitude"}, {}};
  for (Channel channel : {Channel::kCentral, Channel::kAncilla}) {
    if (ch == "central" && channel != Channel::kCentral) continue;
    if (ch == "ancilla" && channel != Channel::kAncilla) continue;
    for (const auto& l : stick_spectrum(reg, st, channel).lines)
      t.rows.push_back({static_cast<double>(l.channel), static_cast<double>(l.h), l.frequency_hz, l.amplitude});
  }
  return {c.exp, {t}, {{"channel_codes", "0 central, 1 ancilla"}}, {}};
}

ExperimentResult run_noon(const Context& c, bool dry) {
  const Register reg = c.reg();
  const LayoutPtr layout = make_layout(reg, c.backend);
  if (dry) return {};
  const State input =
      c.cfg.get_string(c.exp, "input") == "ground" ? ground_state(layout) : thermal_state(reg, c.backend, thermal_model(c));
  const CoherenceDecomposition d = coherence_decompose(prepare_mssm(input));
  const auto pascal = pascal_weights(reg.n_total());
  Table t{c.exp, {"q", "h", "weight", "pascal", "subspace_population"}, {}};
  for (int q : coherence_orders(reg.n_total())) {
    const int h = (reg.n_total() - q) / 2;
    const SubspacePopulations sp = subspace_populations(reg, h);
    t.rows.push_back({static_cast<double>(q), static_cast<double>(h), d.weight(q),
                      static_cast<double>(pascal.at(q)), sp.p0 + sp.p1});
  }
  return {c.exp, {t}, {{"diagonal_mass", format_number(d.p_diag)}}, {}};
}

ExperimentResult run_diffusion(const Context& c, bool dry) {
  const Register reg = c.reg();
  DiffusionParams p;
  p.d_const = c.cfg.get_real(c.exp, "d_const");
  p.delta_small = c.cfg.get_real(c.exp, "delta_small");
  p.delta_big = c.cfg.get_real(c.exp, "delta_big");
  p.g_z = c.cfg.get_reals(c.exp, "g_z");
  p.trials = c.cfg.get_uint(c.exp, "trials");
  p.seed = c.seed;
  validate(p);
  const std::vector<int> orders = orders_of(c, "orders");
  const std::string method = c.cfg.get_string(c.exp, "method");
  if (dry) return {};
  const bool closed = method != "monte_carlo", mc = method != "closed_form";
  Table t{c.exp, {"q", "lopsidedness", "g_z"}, {}};
  if (closed) t.columns.push_back("closed_form");
  if (mc) t.columns.insert(t.columns.end(), {"monte_carlo", "std_error"});
  std::vector<std::vector<DiffusionPoint>> sim;
  if (mc) sim = diffusion_monte_carlo(reg, orders, p, c.threads);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto exact = diffusion_decay_closed_form(reg, orders[i], p);
    for (std::size_t k = 0; k < p.g_z.size(); ++k) {
      std::vector<double> row = {static_cast<double>(orders[i]), lopsidedness(reg, orders[i]), p.g_z[k]};
      if (closed) row.push_back(exact[k].signal);
      if (mc) row.insert(row.end(), {sim[i][k].signal, sim[i][k].std_error});
      t.rows.push_back(std::move(row));
    }
  }
  return {c.exp, {t}, {}, {}};
}

ExperimentResult run_rfi(const Context& c, bool dry) {
  const Register reg = c.reg();
  const auto wc = c.cfg.get_reals(c.exp, "omega_c"), wa = c.cfg.get_reals(c.exp, "omega_a"),
             w = c.cfg.get_reals(c.exp, "weights");
  require(wc.size() == wa.size() && wa.size() == w.size(), ErrorCode::kInvalidArgument,
          "rfi.omega_c, rfi.omega_a and rfi.weights must have equal lengths");
  RfiDistribution dist;
  for (std::size_t i = 0; i < w.size(); ++i) dist.push_back({wc[i], wa[i], w[i]});
  validate_distribution(dist);
  const int q = c.cfg.has(c.exp, "order")
                    ? to_int(c.cfg.get_int(c.exp, "order"), "rfi.order", -reg.n_total(), reg.n_total())
                    : reg.n_total();
  RfiGrid g;
  g.n_c = to_int(c.cfg.get_int(c.exp, "n_c"), "rfi.n_c", 1, 1 << 16);
  g.dt_c = c.cfg.get_real(c.exp, "dt_c");
  g.n_a = to_int(c.cfg.get_int(c.exp, "n_a"), "rfi.n_a", 1, 1 << 16);
  g.dt_a = c.cfg.get_real(c.exp, "dt_a");
  require(g.dt_c > 0.0, ErrorCode::kInvalidArgument, "rfi.dt_c must be positive");
  require(g.n_a == 1 || g.dt_a > 0.0, ErrorCode::kInvalidArgument, "rfi.dt_a must be positive when n_a > 1");
  require(g.n_a == 1 || rfi_ancilla_factor(reg, q) != 0.0, ErrorCode::kInvalidArgument,
          "order 1 carries no ancilla phase; set rfi.n_a = 1");
  if (dry) return {};
  const RfiMap m = rfi_map(reg, q, dist, g);
  Table t{c.exp, {"omega_c", "omega_a", "probability"}, {}};
  for (std::size_t i = 0; i < m.omega_c.size(); ++i)
    for (std::size_t k = 0; k < m.omega_a.size(); ++k)
      t.rows.push_back({m.omega_c[i], m.omega_a[k], m.probability(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))});
  return {c.exp,
          {t},
          {{"order", std::to_string(q)},
           {"ancilla_factor", format_number(rfi_ancilla_factor(reg, q))},
           {"total_variation", format_number(rfi_total_variation(m, dist))}},
          {}};
}

ExperimentResult run_noise(const Context& c, bool dry) {
  const Register reg = c.reg();
  NoiseModel nm;
  nm.spectrum = c.cfg.get_string(c.exp, "spectrum") == "white"
                    ? NoiseSpectrum::white(c.cfg.get_real(c.exp, "s0"))
                    : NoiseSpectrum::ornstein_uhlenbeck(c.cfg.get_real(c.exp, "sigma"), c.cfg.get_real(c.exp, "tau_c"));
  nm.kind = c.cfg.get_string(c.exp, "kind") == "independent" ? NoiseKind::kIndependent : NoiseKind::kCorrelated;
  nm.cross_correlation = c.cfg.get_real(c.exp, "cross_correlation");
  nm.seed = c.seed;
  NoisePathSampler(nm.spectrum, 1.0);
  require(std::abs(nm.cross_correlation) <= 1.0, ErrorCode::kInvalidArgument, "noise.cross_correlation must lie in [-1, 1]");
  const auto freqs = c.cfg.get_reals(c.exp, "frequencies");
  require(freqs.size() >= 3, ErrorCode::kInsufficientFilters, "noise.frequencies needs at least three filters");
  for (double f : freqs) require(f > 0.0, ErrorCode::kInvalidArgument, "noise.frequencies must be positive");
  const std::vector<int> orders = orders_of(c, "orders");
  CpmgOptions o;
  o.t_max = c.cfg.get_real(c.exp, "t_max");
  o.trials = c.cfg.get_uint(c.exp, "trials");
  o.steps_per_tau = to_int(c.cfg.get_int(c.exp, "steps_per_tau"), "noise.steps_per_tau", 1, 4096);
  o.threads = c.threads;
  o.backend = c.backend;
  require(o.t_max > 0.0, ErrorCode::kInvalidArgument, "noise.t_max must be positive");
  require(o.trials >= 1, ErrorCode::kInvalidArgument, "noise.trials must be at least 1");
  if (nm.kind == NoiseKind::kIndependent)
    require(c.backend == Backend::kDense, ErrorCode::kSymmetryViolation,
            "independent noise breaks permutation symmetry; use backend = dense or auto");
  make_layout(reg, c.backend);
  if (dry) return {};

  std::map<int, std::vector<CpmgCurve>> by_order;
  for (double f : freqs) {
    o.tau = 1.0 / (4.0 * f);
    const auto curves = cpmg_decay(reg, orders, nm, o);
    for (std::size_t i = 0; i < orders.size(); ++i) by_order[orders[i]].push_back(curves[i]);
  }
  Table t{c.exp, {"q", "lopsidedness", "filter_hz", "omega", "rate", "s"}, {}};
  Table fit{"noise_fit", {"q", "lopsidedness", "s_low", "s_mean"}, {}};
  for (int q : orders) {
    const auto table = extract_noise_spectrum(by_order[q]);
    double mean = 0.0;
    for (const auto& p : table) {
      t.rows.push_back({static_cast<double>(q), lopsidedness(reg, q), p.omega / (2.0 * kPi), p.omega, p.rate, p.s});
      mean += p.s / table.size();
    }
    fit.rows.push_back({static_cast<double>(q), lopsidedness(reg, q), table.front().s, mean});
  }
  return {c.exp, {t, fit}, {{"spectrum_units", "rad^2/s two-sided"}}, {}};
}

ExperimentResult run_hbac(const Context& c, bool dry) {
  const Register reg = c.reg();
  HbacSchedule s;
  s.iterations = to_int(c.cfg.get_int(c.exp, "iterations"), "hbac.iterations", 1, 100000);
  s.tau_hb = c.cfg.get_real(c.exp, "tau_hb");
  s.reset_model = c.cfg.get_string(c.exp, "reset") == "full" ? ResetModel::kFull : ResetModel::kExponential;
  require(s.tau_hb >= 0.0, ErrorCode::kInvalidArgument, "hbac.tau_hb must be nonnegative");
  require(reg.spec().t1_a && reg.spec().t1_c, ErrorCode::kMissingRelaxationTimes,
          "hbac needs register.t1_c and register.t1_a");
  const bool ceiling = c.cfg.get_bool(c.exp, "ceiling");
  require(!ceiling || reg.n_total() <= 20, ErrorCode::kInvalidArgument, "hbac.ceiling needs n_total <= 20");
  make_layout(reg, c.backend);
  if (dry) return {};
  const HbacSeries run = hbac_run(reg, s, c.backend);
  HbacSeries top;
  if (ceiling) top = hbac_sorting_ceiling(reg, s);
  Table t{c.exp, {"n", "m", "iz_central"}, {}};
  if (ceiling) t.columns.push_back("ceiling");
  for (std::size_t n = 0; n < run.m.size(); ++n) {
    std::vector<double> row = {static_cast<double>(n), run.m[n], run.iz_central[n]};
    if (ceiling) row.push_back(top.m[n]);
    t.rows.push_back(std::move(row));
  }
  return {c.exp, {t}, {{"single_transfer_gain", format_number(std::abs(reg.epsilon_a() / reg.epsilon_c()))}}, {}};
}

ExperimentResult run_qfi(const Context& c, bool dry) {
  std::vector<int> ns;
  if (c.cfg.has(c.exp, "n_values")) {
    for (auto n : c.cfg.get_ints(c.exp, "n_values")) ns.push_back(to_int(n, "qfi.n_values", 2, kQfiMaxSweepSize));
  } else {
    ns.push_back(c.spec.n_total);
  }
  const double theta0 = c.cfg.get_real(c.exp, "theta0"), phi0 = c.cfg.get_real(c.exp, "phi0");
  FisherOptions fo;
  fo.fd_step = c.cfg.get_real(c.exp, "fd_step");
  fo.probability_floor = c.cfg.get_real(c.exp, "probability_floor");
  require(fo.fd_step > 0.0, ErrorCode::kInvalidArgument, "qfi.fd_step must be positive");
  const int copies = to_int(c.cfg.get_int(c.exp, "copies"), "qfi.copies", 1);
  const double eps = c.cfg.has(c.exp, "epsilon_a") ? c.cfg.get_real(c.exp, "epsilon_a") : c.reg().epsilon_a();
  for (int n : ns) {
    RegisterSpec s = c.spec;
    s.n_total = n;
    make_layout(Register(s), c.backend);
  }
  if (dry) return {};
  Table t{c.exp, {"n", "epsilon_a", "theta0", "phi0", "fisher", "bound", "ratio"}, {}};
  for (int n : ns) {
    RegisterSpec s = c.spec;
    s.n_total = n;
    const Register reg(s);
    const ProbeState p = encode_parameter(prepare_correlated_probe(reg, c.backend, eps), theta0, phi0, eps);
    const double f = qfi_classical_fisher(p, sld_observable(p), fo).value;
    t.rows.push_back({static_cast<double>(n), eps, theta0, phi0, f, cramer_rao(f, copies),
                      amplification_ratio(reg, theta0, phi0, c.backend, eps, fo)});
  }
  return {c.exp, {t}, {{"observable", "(t.I^C) I_z^A"}, {"copies", std::to_string(copies)}}, {}};
}

ExperimentResult run_dtc(const Context& c, bool dry) {
  const Register reg = c.reg();
  FloquetSpec f;
  f.period = c.cfg.get_real(c.exp, "period");
  require(f.period > 0.0, ErrorCode::kInvalidArgument, "dtc.period must be positive");
  f.j_coupling = c.cfg.get_real(c.exp, "jt") / f.period;
  f.n_periods = to_int(c.cfg.get_int(c.exp, "n_periods"), "dtc.n_periods", 7, 1 << 24);
  validate(f, reg.n_total());
  const auto errors = c.cfg.get_reals(c.exp, "errors");
  for (double e : errors)
    require(e >= 0.0 && e < 0.5 * kPi, ErrorCode::kInvalidArgument, "dtc.errors must lie in [0, pi/2)");
  DtcOptions o;
  const std::string obs = c.cfg.get_string(c.exp, "observable");
  o.observable = obs == "central" ? DtcObservable::kCentral : obs == "ancillas" ? DtcObservable::kAncillas : DtcObservable::kTotal;
  o.initial = c.cfg.get_string(c.exp, "initial") == "thermal" ? DtcInitial::kThermal : DtcInitial::kPolarized;
  o.window = c.cfg.get_string(c.exp, "window") == "hann" ? Window::kHann : Window::kRectangular;
  o.backend = c.backend;
  o.threads = c.threads;
  make_layout(reg, c.backend);
  if (dry) return {};
  const auto rows = dtc_error_sweep(reg, f, errors, o);
  Table t{c.exp, {"e", "peak_freq", "peak_height", "decay_time", "control_peak_freq"}, {}};
  Table spec{"dtc_spectrum", {"e", "frequency", "power"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.error, r.report.peak_frequency, r.report.peak_height, r.report.decay_time, r.control_peak_frequency});
    for (std::size_t k = 0; k < r.report.power.size(); ++k)
      spec.rows.push_back({r.error, r.report.frequency[k], r.report.power[k]});
  }
  ExperimentResult res{c.exp, {t}, {{"decay_time_units", "periods"}, {"j_coupling_hz", format_number(f.j_coupling)}}, {}};
  if (c.cfg.get_bool(c.exp, "spectra")) res.tables.push_back(std::move(spec));
  return res;
}

ExperimentResult run_chaos(const Context& c, bool dry) {
  KickedTopSpec k;
  k.j_ca = c.cfg.get_real(c.exp, "j_ca");
  k.n_kicks = to_int(c.cfg.get_int(c.exp, "n_kicks"), "chaos.n_kicks", 1);
  k.average_window = to_int(c.cfg.get_int(c.exp, "average_window"), "chaos.average_window", 1);
  k.theta = c.cfg.get_real(c.exp, "theta");
  k.phi = c.cfg.get_real(c.exp, "phi");
  const auto ks = c.cfg.get_reals(c.exp, "k");
  for (double v : ks) {
    k.chaoticity = v;
    validate(k);
  }
  PhaseGrid g;
  g.n_theta = to_int(c.cfg.get_int(c.exp, "n_theta"), "chaos.n_theta", 1, 1 << 14);
  g.n_phi = to_int(c.cfg.get_int(c.exp, "n_phi"), "chaos.n_phi", 1, 1 << 14);
  const bool map = c.cfg.get_string(c.exp, "mode") == "map";
  std::vector<int> counts;
  for (auto n : c.cfg.get_ints(c.exp, "ancilla_counts"))
    counts.push_back(to_int(n, "chaos.ancilla_counts", 1, kSymmetricMaxQubits - 1));
  const Register reg = c.reg();
  make_layout(reg, c.backend);
  if (!map)
    for (int n : counts) require(c.backend != Backend::kDense || n + 1 <= kDenseMaxQubits, ErrorCode::kBackendLimit,
                                 "dense backend holds at most " + std::to_string(kDenseMaxQubits) + " qubits");
  if (dry) return {};
  ExperimentResult res{c.exp, {}, {{"entropy_unit", "bits"}}, {}};
  for (double v : ks) res.metadata.push_back({"kick_interval_s[k=" + format_number(v) + "]", format_number(v / (2 * kPi * k.j_ca))});
  if (map) {
    Table t{c.exp, {"theta", "phi", "k", "mean_entropy"}, {}};
    for (double v : ks) {
      k.chaoticity = v;
      const EntropyMap m = phase_space_map(reg, k, g, c.backend, c.threads);
      for (std::size_t i = 0; i < m.theta.size(); ++i)
        for (std::size_t j = 0; j < m.phi.size(); ++j)
          t.rows.push_back({m.theta[i], m.phi[j], v, m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
    res.tables.push_back(std::move(t));
  } else {
    Table t{c.exp, {"k", "n_ancilla", "parity", "mean_entropy", "osc_amplitude"}, {}};
    for (double v : ks) {
      k.chaoticity = v;
      for (const auto& r : size_sweep(c.spec, k, counts, c.backend, c.threads))
        t.rows.push_back({v, static_cast<double>(r.n_ancilla), static_cast<double>(r.n_ancilla % 2), r.mean_entropy, r.osc_amplitude});
    }
    res.metadata.push_back({"parity_codes", "0 even, 1 odd"});
    res.tables.push_back(std::move(t));
  }
  return res;
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r = {
      {"spectrum", run_spectrum}, {"noon", run_noon}, {"diffusion", run_diffusion},
      {"rfi", run_rfi},           {"noise", run_noise}, {"hbac", run_hbac},
      {"qfi", run_qfi},           {"dtc", run_dtc},     {"chaos", run_chaos},
  };
  return r;
}

ExperimentResult dispatch(const ExperimentConfig& config, bool dry) {
  const std::string exp = config.experiment();
  const Context c{config, register_spec(config), resolve_backend(config), config.get_uint("", "seed"),
                  static_cast<int>(config.get_int("", "threads")), exp};
  static_cast<void>(Register(c.spec));
  return runners().at(exp)(c, dry);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Backend resolve_backend(const ExperimentConfig& config) {
  const std::string b = config.get_string("", "backend");
  if (b == "symmetric") return Backend::kSymmetric;
  if (b == "dense") return Backend::kDense;
  const std::string exp = config.experiment();
  if (exp == "noise" && config.has(exp, "kind") && config.get_string(exp, "kind") == "independent") return Backend::kDense;
  return Backend::kSymmetric;
}

void plan_experiment(const ExperimentConfig& config) { dispatch(config, true); }

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult r = dispatch(config, false);
  r.metadata.insert(r.metadata.begin(), {{"tool", std::string("starreg ") + STARREG_VERSION},
                                          {"experiment", r.experiment},
                                          {"seed", std::to_string(config.get_uint("", "seed"))},
                                          {"backend_resolved", std::string(backend_name(resolve_backend(config)))}});
  r.resolved_config = render_config(config, true);
  return r;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.columns.size(), ErrorCode::kColumnMismatch, "table '" + table.name + "' is not rectangular");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_meta(const ExperimentResult& result) {
  std::string out;
  for (const auto& [k, v] : result.metadata) out += "# " + k + " = " + v + "\n";
  out += "\n" + result.resolved_config;
  return out;
}

void write_result(const ExperimentResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, std::string>> files;
  for (const auto& t : result.tables) files.emplace_back(fs::path(dir) / (t.name + ".csv"), to_csv(t));
  files.emplace_back(fs::path(dir) / (result.experiment + ".meta"), to_meta(result));
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::kIoError, "cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& [path, text] : files) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    require(f.good(), ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  }
}

}  // namespace starreg
