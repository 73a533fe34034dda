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

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

/// Two-sided spectral density S(w) of the central-spin frequency noise in
/// rad^2/s. Ancilla noise is the same field scaled by gamma_A / gamma_C.
struct NoiseSpectrum {
  enum class Form { kOrnsteinUhlenbeck, kWhite, kTable };

  Form form = Form::kOrnsteinUhlenbeck;
  double sigma = 0.0;  // OU stationary standard deviation (rad/s)
  double tau_c = 0.0;  // OU correlation time (s)
  double s0 = 0.0;     // white level (rad^2/s)
  std::vector<std::pair<double, double>> table;  // (w rad/s, S) samples

  static NoiseSpectrum ornstein_uhlenbeck(double sigma, double tau_c);
  static NoiseSpectrum white(double s0);
  static NoiseSpectrum tabulated(std::vector<std::pair<double, double>> table);

  /// S(w); an OU form evaluates 2 sigma^2 tau_c / (1 + w^2 tau_c^2).
  double operator()(double omega) const;
};

enum class NoiseKind { kCorrelated, kIndependent };

struct NoiseModel {
  NoiseKind kind = NoiseKind::kCorrelated;
  NoiseSpectrum spectrum;
  double cross_correlation = 1.0;  // used when kind = kIndependent
  std::uint64_t seed = 0;
};

/// Lorentzian S0 / (1 + w^2 tau_c^2) fitted by linear regression of 1/S on w^2.
struct OuFit {
  double s0 = 0.0;
  double tau_c = 0.0;
  double sigma = 0.0;
};

OuFit fit_ornstein_uhlenbeck(const std::vector<std::pair<double, double>>& samples);

/// Piecewise-constant noise sampler with exact OU transition probabilities.
class NoisePathSampler {
 public:
  NoisePathSampler(const NoiseSpectrum& spectrum, double dt);

  /// Fills `path` with one stationary realization.
  void sample(std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> path) const;

  double dt() const noexcept { return dt_; }

 private:
  bool white_;
  double dt_;
  double sigma_;
  double decay_;
  double kick_;
};

/// Per-spin frequency noise for one trial: row k is spin k (row 0 central),
/// in central-spin units before the gamma ratio is applied. Rows share a
/// common component with weight |c| (sign of c applied to the central row).
Eigen::MatrixXd sample_spin_noise(const NoisePathSampler& sampler, double cross_correlation, int n_spins,
                                  Eigen::Index steps, std::mt19937_64& rng);

struct CpmgOptions {
  double tau = 0.0;            // first pulse at tau, then every 2 tau
  double t_max = 0.0;          // last echo time (s)
  std::uint64_t trials = 10000;
  int steps_per_tau = 8;
  int threads = 1;
  Backend backend = Backend::kSymmetric;
};

struct CpmgPoint {
  double time = 0.0;
  int n_pulses = 0;
  double coherence = 1.0;
  double std_error = 0.0;
};

struct CpmgCurve {
  int q = 1;
  double tau = 0.0;
  double omega = 0.0;  // filter centre pi / (2 tau)
  std::vector<CpmgPoint> points;
};

/// Ensemble-averaged amplitude of the order-q coherence sampled at every
/// echo (even pulse count). q = 1 is the single-quantum coherence of the
/// central spin; other orders are the MSSM coherences. Correlated noise uses
/// the collective phase l_q Phi; independent noise requires the dense
/// backend and tracks every coherence element.
CpmgCurve cpmg_decay(const Register& reg, int q, const NoiseModel& noise, const CpmgOptions& opt);

/// Several orders from one set of noise realizations.
std::vector<CpmgCurve> cpmg_decay(const Register& reg, const std::vector<int>& orders, const NoiseModel& noise,
                                  const CpmgOptions& opt);

/// Weighted least-squares slope of -ln C(T) through the origin using points
/// with C >= `floor` and weights C^2.
double cpmg_decay_rate(const CpmgCurve& curve, double floor = 0.05);

struct SpectrumPoint {
  double omega = 0.0;  // rad/s
  double s = 0.0;      // rad^2/s
  double rate = 0.0;   // fitted decay rate (1/s)
};

/// S(w_n) = pi^2 R / 4 from the first harmonic of the CPMG filter. Needs at
/// least three distinct filter frequencies (InsufficientFilters).
std::vector<SpectrumPoint> extract_noise_spectrum(const std::vector<CpmgCurve>& curves);

/// y = slope * x through the origin, with R^2 about the mean of y.
struct ProportionalFit {
  double slope = 0.0;
  double r2 = 0.0;
};

ProportionalFit fit_proportional(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace starreg
