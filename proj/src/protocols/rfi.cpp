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

#include "protocols/rfi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/FFT>

#include "core/error.hpp"

namespace starreg {

namespace {

// Signed frequency of DFT bin k out of n with sample spacing dt.
double bin_frequency(int k, int n, double dt) {
  const int s = k < (n + 1) / 2 ? k : k - n;
  return 2.0 * kPi * s / (n * dt);
}

std::size_t nearest(const std::vector<double>& axis, double v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (std::abs(axis[i] - v) < std::abs(axis[best] - v)) best = i;
  return best;
}

std::complex<double> signal_unchecked(const RfiDistribution& dist, double f, double t_c, double t_a) {
  std::complex<double> s = 0.0;
  for (const auto& a : dist) s += a.weight * std::polar(1.0, a.omega_c * t_c + f * a.omega_a * t_a);
  return s;
}

}  // namespace

void validate_distribution(const RfiDistribution& dist, double tol) {
  require(!dist.empty(), ErrorCode::kUnnormalizedDistribution, "RF distribution is empty");
  double total = 0.0;
  for (const auto& a : dist) {
    require(std::isfinite(a.weight) && a.weight >= 0.0, ErrorCode::kUnnormalizedDistribution,
            "RF distribution weights must be nonnegative");
    require(std::isfinite(a.omega_c) && std::isfinite(a.omega_a), ErrorCode::kInvalidArgument,
            "RF amplitudes must be finite");
    total += a.weight;
  }
  require(std::abs(total - 1.0) <= tol, ErrorCode::kUnnormalizedDistribution,
          "RF distribution sums to " + std::to_string(total) + ", expected 1");
}

double rfi_ancilla_factor(const Register& reg, int q) {
  const double sign = reg.spec().gamma_a * reg.spec().gamma_c > 0.0 ? 1.0 : -1.0;
  return (q - 1) * sign;
}

std::complex<double> rfi_signal(const Register& reg, int q, const RfiDistribution& dist, double t_c, double t_a) {
  validate_distribution(dist);
  return signal_unchecked(dist, rfi_ancilla_factor(reg, q), t_c, t_a);
}

RfiMap rfi_map(const Register& reg, int q, const RfiDistribution& dist, const RfiGrid& grid) {
  validate_distribution(dist);
  require(grid.n_c >= 1 && grid.n_a >= 1, ErrorCode::kInvalidArgument, "RFI time grid is empty");
  require(grid.n_c == 1 || (std::isfinite(grid.dt_c) && grid.dt_c > 0.0), ErrorCode::kInvalidArgument,
          "RFI grid dt_c must be positive");
  require(grid.n_a == 1 || (std::isfinite(grid.dt_a) && grid.dt_a > 0.0), ErrorCode::kInvalidArgument,
          "RFI grid dt_a must be positive");
  const double f = rfi_ancilla_factor(reg, q);
  require(grid.n_a == 1 || f != 0.0, ErrorCode::kInvalidArgument,
          "order q=1 carries no ancilla phase; use a one-point ancilla axis");

  const int nc = grid.n_c, na = grid.n_a;
  Eigen::MatrixXcd s(nc, na);
  for (int i = 0; i < nc; ++i)
    for (int k = 0; k < na; ++k) s(i, k) = signal_unchecked(dist, f, i * grid.dt_c, k * grid.dt_a);

  // Forward transform along both axes: sum_t S(t) exp(-i w t).
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd spec = s;
  std::vector<std::complex<double>> in, out;
  for (int k = 0; k < na && nc > 1; ++k) {
    in.assign(s.col(k).data(), s.col(k).data() + nc);
    fft.fwd(out, in);
    for (int i = 0; i < nc; ++i) spec(i, k) = out[i];
  }
  for (int i = 0; i < nc && na > 1; ++i) {
    in.resize(na);
    for (int k = 0; k < na; ++k) in[k] = spec(i, k);
    fft.fwd(out, in);
    for (int k = 0; k < na; ++k) spec(i, k) = out[k];
  }

  std::vector<int> order_c(nc), order_a(na);
  for (int i = 0; i < nc; ++i) order_c[i] = i;
  for (int k = 0; k < na; ++k) order_a[k] = k;
  const auto wc = [&](int i) { return nc == 1 ? 0.0 : bin_frequency(i, nc, grid.dt_c); };
  const auto wa = [&](int k) { return na == 1 ? 0.0 : bin_frequency(k, na, grid.dt_a) / f; };
  std::sort(order_c.begin(), order_c.end(), [&](int x, int y) { return wc(x) < wc(y); });
  std::sort(order_a.begin(), order_a.end(), [&](int x, int y) { return wa(x) < wa(y); });

  RfiMap m;
  m.probability.resize(nc, na);
  for (int i : order_c) m.omega_c.push_back(wc(i));
  for (int k : order_a) m.omega_a.push_back(wa(k));
  double total = 0.0;
  for (int i = 0; i < nc; ++i)
    for (int k = 0; k < na; ++k) {
      const double v = std::max(0.0, spec(order_c[i], order_a[k]).real());
      m.probability(i, k) = v;
      total += v;
    }
  require(total > 0.0, ErrorCode::kInvalidArgument, "RFI map has no positive spectral weight");
  m.probability /= total;
  return m;
}

std::vector<std::complex<double>> rfi_diagonal(const Register& reg, int q, const RfiDistribution& dist,
                                               const std::vector<double>& times) {
  require(!times.empty(), ErrorCode::kInvalidArgument, "RFI time list is empty");
  std::vector<std::complex<double>> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(rfi_signal(reg, q, dist, t, t));
  return out;
}

double rfi_total_variation(const RfiMap& map, const RfiDistribution& dist) {
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(map.probability.rows(), map.probability.cols());
  for (const auto& a : dist) target(nearest(map.omega_c, a.omega_c), nearest(map.omega_a, a.omega_a)) += a.weight;
  return 0.5 * (map.probability - target).cwiseAbs().sum();
}

}  // namespace starreg
