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

#pragma once

#include <vector>

#include "core/dynamics.hpp"
#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

/// Default Ising phase J*T used by the sweeps and example configs.
inline constexpr double kDefaultDtcJT = 0.45;

/// Periodically kicked Ising star. One period is
///   U = exp(-i 2 pi J T I_z^C I_z^A) exp(+i h I_x^tot),
/// with spin-1/2 operators I = sigma/2, so h is the kick rotation angle and
/// h = pi - error is an imperfect pi pulse.
struct FloquetSpec {
  double j_coupling = 0.0;          // Hz
  double period = 1e-3;             // s
  double error = 0.0;               // rad
  std::vector<double> kick_angles;  // optional per-spin h_i (central first), dense only
  int n_periods = 200;
};

/// Converts the Pauli form exp(-i g sum sz sz) exp(+i h_p sum sx) into a
/// FloquetSpec: J T = 2 g / pi and rotation angle h = 2 h_p.
FloquetSpec floquet_from_pauli(double g, double h_pauli, double period, int n_periods);

void validate(const FloquetSpec& spec, int n_total);

Operator floquet_unitary(const Register& reg, const FloquetSpec& spec, Backend backend);

enum class DtcObservable { kCentral, kAncillas, kTotal };
enum class DtcInitial { kPolarized, kThermal };

Operator dtc_observable(const LayoutPtr& layout, DtcObservable which);

/// <O> after n applications of U for n = 0 .. n_periods.
std::vector<double> stroboscopic_series(const State& state0, const Operator& u, int n_periods, const Operator& observable);

enum class Window { kRectangular, kHann };

struct SubharmonicReport {
  std::vector<double> frequency;  // Hz, 0 .. 1/(2T)
  std::vector<double> power;      // |DFT|^2 / L^2
  double peak_frequency = 0.0;    // frequency of the strongest bin
  double peak_height = 0.0;       // power in the 1/(2T) bin
  double decay_time = 0.0;        // envelope decay in periods (inf if not decaying)
};

/// DFT power spectrum of the largest even-length prefix of the series and
/// an exponential envelope fit of |series| (log-magnitude floor 1e-6).
/// Throws SeriesTooShort below 8 samples.
SubharmonicReport subharmonic_analysis(const std::vector<double>& series, double period,
                                       Window window = Window::kRectangular);

struct DtcOptions {
  DtcObservable observable = DtcObservable::kTotal;
  DtcInitial initial = DtcInitial::kPolarized;
  Window window = Window::kRectangular;
  Backend backend = Backend::kSymmetric;
  int threads = 1;
};

struct DtcSweepRow {
  double error = 0.0;
  SubharmonicReport report;
  double control_peak_frequency = 0.0;  // same drive with J = 0
};

/// One row per pulse error; each error must lie in [0, pi/2).
std::vector<DtcSweepRow> dtc_error_sweep(const Register& reg, const FloquetSpec& base, const std::vector<double>& errors,
                                         const DtcOptions& options = {});

/// Isolated-spin stroboscopic frequency (1 - e/pi) / (2T).
double isolated_spin_frequency(double error, double period);

}  // namespace starreg
