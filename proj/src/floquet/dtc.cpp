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

#include "floquet/dtc.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include <unsupported/Eigen/FFT>

#include "core/error.hpp"
#include "prep/state_prep.hpp"
#include "util/parallel.hpp"

namespace starreg {

namespace {

Eigen::Matrix2cd x_rotation(double angle) {
  Eigen::Matrix2cd r;
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  r << c, cplx(0.0, -s), cplx(0.0, -s), c;
  return r;
}

}  // namespace

FloquetSpec floquet_from_pauli(double g, double h_pauli, double period, int n_periods) {
  require(std::isfinite(period) && period > 0.0, ErrorCode::kInvalidArgument, "Floquet period must be positive");
  FloquetSpec s;
  s.period = period;
  s.j_coupling = 2.0 * g / (kPi * period);
  s.error = kPi - 2.0 * h_pauli;
  s.n_periods = n_periods;
  return s;
}

void validate(const FloquetSpec& spec, int n_total) {
  require(std::isfinite(spec.period) && spec.period > 0.0, ErrorCode::kInvalidArgument, "dtc.period must be positive");
  require(std::isfinite(spec.j_coupling), ErrorCode::kInvalidArgument, "dtc.j_coupling must be finite");
  require(std::isfinite(spec.error), ErrorCode::kInvalidArgument, "dtc.error must be finite");
  require(spec.n_periods >= 2, ErrorCode::kInvalidArgument, "dtc.n_periods must be at least 2");
  require(spec.kick_angles.empty() || static_cast<int>(spec.kick_angles.size()) == n_total,
          ErrorCode::kInvalidArgument, "dtc.kick_angles needs one angle per spin");
  for (double h : spec.kick_angles) require(std::isfinite(h), ErrorCode::kInvalidArgument, "kick angles must be finite");
}

Operator floquet_unitary(const Register& reg, const FloquetSpec& spec, Backend backend) {
  validate(spec, reg.n_total());
  const LayoutPtr layout = make_layout(reg, backend);
  const double phase = 2.0 * kPi * spec.j_coupling * spec.period;
  const Operator ising = diagonal_op(layout, [&](const Block& blk, int p) {
    const double mc = p / blk.anc_dim == 0 ? 0.5 : -0.5;
    return std::polar(1.0, -phase * mc * 0.5 * blk.two_m_anc[p % blk.anc_dim]);
  });
  Operator kick(layout);
  if (spec.kick_angles.empty()) {
    kick = rotation_operator(layout, {1.0, 0.0, 0.0}, -(kPi - spec.error), Target::kBoth);
  } else {
    require(backend == Backend::kDense, ErrorCode::kSymmetryViolation,
            "per-spin kick angles break permutation symmetry; use the dense backend");
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(1, 1);
    for (double h : spec.kick_angles) k = kron(k, x_rotation(-h));
    kick.block(0) = k;
  }
  return ising * kick;
}

Operator dtc_observable(const LayoutPtr& layout, DtcObservable which) {
  switch (which) {
    case DtcObservable::kCentral: return central_op(layout, Axis::kZ);
    case DtcObservable::kAncillas: return ancilla_op(layout, Axis::kZ);
    case DtcObservable::kTotal: break;
  }
  return central_op(layout, Axis::kZ) + ancilla_op(layout, Axis::kZ);
}

std::vector<double> stroboscopic_series(const State& state0, const Operator& u, int n_periods, const Operator& observable) {
  require(n_periods >= 2, ErrorCode::kInvalidArgument, "n_periods must be at least 2");
  state0.require_compatible(u, "stroboscopic_series");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_periods) + 1);
  State rho = state0;
  out.push_back(expectation(rho, observable));
  for (int n = 0; n < n_periods; ++n) {
    rho = apply_unitary(u, rho);
    out.push_back(expectation(rho, observable));
  }
  return out;
}

SubharmonicReport subharmonic_analysis(const std::vector<double>& series, double period, Window window) {
  require(series.size() >= 8, ErrorCode::kSeriesTooShort, "subharmonic analysis needs at least 8 samples");
  require(std::isfinite(period) && period > 0.0, ErrorCode::kInvalidArgument, "period must be positive");
  const std::size_t len = series.size() / 2 * 2;
  std::vector<std::complex<double>> in(len), out;
  for (std::size_t n = 0; n < len; ++n) {
    const double w = window == Window::kHann ? 0.5 * (1.0 - std::cos(2.0 * kPi * n / len)) : 1.0;
    in[n] = series[n] * w;
  }
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  SubharmonicReport r;
  const double l = static_cast<double>(len);
  std::size_t best = 0;
  for (std::size_t k = 0; k <= len / 2; ++k) {
    r.frequency.push_back(k / (l * period));
    r.power.push_back(std::norm(out[k]) / (l * l));
    if (r.power[k] > r.power[best]) best = k;
  }
  r.peak_frequency = r.frequency[best];
  r.peak_height = r.power.back();

  // Least-squares line through log|x_n| against n.
  double sn = 0.0, sy = 0.0, snn = 0.0, sny = 0.0;
  const double cnt = static_cast<double>(series.size());
  for (std::size_t n = 0; n < series.size(); ++n) {
    const double y = std::log(std::max(std::abs(series[n]), 1e-6));
    sn += n;
    sy += y;
    snn += static_cast<double>(n) * n;
    sny += n * y;
  }
  const double slope = (cnt * sny - sn * sy) / (cnt * snn - sn * sn);
  r.decay_time = slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::infinity();
  return r;
}

double isolated_spin_frequency(double error, double period) { return (1.0 - error / kPi) / (2.0 * period); }

std::vector<DtcSweepRow> dtc_error_sweep(const Register& reg, const FloquetSpec& base, const std::vector<double>& errors,
                                         const DtcOptions& options) {
  require(!errors.empty(), ErrorCode::kInvalidArgument, "dtc error grid is empty");
  for (double e : errors)
    require(std::isfinite(e) && e >= 0.0 && e < 0.5 * kPi, ErrorCode::kInvalidArgument,
            "dtc errors must lie in [0, pi/2)");
  validate(base, reg.n_total());
  const LayoutPtr layout = make_layout(reg, options.backend);
  const State rho0 = options.initial == DtcInitial::kPolarized ? ground_state(layout) : thermal_state(reg, options.backend);
  const Operator obs = dtc_observable(layout, options.observable);

  std::vector<DtcSweepRow> rows(errors.size());
  parallel_for(errors.size(), options.threads, [&](std::size_t i) {
    FloquetSpec s = base;
    s.error = errors[i];
    s.kick_angles.clear();
    rows[i].error = errors[i];
    rows[i].report = subharmonic_analysis(
        stroboscopic_series(rho0, floquet_unitary(reg, s, options.backend), s.n_periods, obs), s.period, options.window);
    s.j_coupling = 0.0;
    rows[i].control_peak_frequency =
        subharmonic_analysis(stroboscopic_series(rho0, floquet_unitary(reg, s, options.backend), s.n_periods, obs),
                             s.period, options.window)
            .peak_frequency;
  });
  return rows;
}

}  // namespace starreg
