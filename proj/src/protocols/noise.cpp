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

#include "protocols/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "core/error.hpp"
#include "prep/state_prep.hpp"
#include "protocols/diffusion.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace starreg {

namespace {

constexpr int kMaxIndependentQubits = 10;

// Sampler parameters for a spectrum: OU (sigma, tau_c) or white level.
struct ProcessParams {
  bool white = false;
  double sigma = 0.0;
  double tau_c = 0.0;
  double s0 = 0.0;
};

ProcessParams process_params(const NoiseSpectrum& s) {
  switch (s.form) {
    case NoiseSpectrum::Form::kOrnsteinUhlenbeck:
      require(std::isfinite(s.sigma) && s.sigma >= 0.0, ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
      require(std::isfinite(s.tau_c) && s.tau_c > 0.0, ErrorCode::kInvalidArgument, "noise tau_c must be > 0");
      return {false, s.sigma, s.tau_c, 0.0};
    case NoiseSpectrum::Form::kWhite:
      require(std::isfinite(s.s0) && s.s0 >= 0.0, ErrorCode::kInvalidArgument, "white noise level must be >= 0");
      return {true, 0.0, 0.0, s.s0};
    case NoiseSpectrum::Form::kTable: {
      const OuFit f = fit_ornstein_uhlenbeck(s.table);
      if (f.tau_c == 0.0) return {true, 0.0, 0.0, f.s0};
      return {false, f.sigma, f.tau_c, 0.0};
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown noise spectrum form");
}

// One group of coherence elements sharing the same per-spin flip pattern.
struct ElementGroup {
  Eigen::RowVectorXd coeff;  // sum_k dm_k r_k, applied to the per-spin phases
  double weight = 0.0;
};

std::vector<ElementGroup> element_groups(const Register& reg, int q) {
  const int n = reg.n_ancilla();
  const LayoutPtr layout = make_layout(reg, Backend::kDense);
  const State th = thermal_state(reg, Backend::kDense);
  const State prepared = q == 1 ? apply_unitary(central_hadamard_operator(layout), th) : prepare_mssm(th);
  const Block& blk = layout->block(0);
  const int mask = blk.anc_dim - 1;
  const double r = reg.gamma_ratio();

  std::map<std::vector<int>, double> groups;
  for (int a = 0; a < blk.anc_dim; ++a) {
    const int x = blk.index(0, a);
    if (q != 1 && mssm_order(blk, x) != q) continue;
    const int a2 = q == 1 ? a : a ^ mask;
    const int y = blk.index(1, a2);
    // Twice the per-spin change in m between ket and bra, central first.
    std::vector<int> dm(n + 1);
    dm[0] = 2;
    for (int k = 0; k < n; ++k) {
      const int bit = 1 << (n - 1 - k);
      const int mx = (a & bit) ? -1 : 1, my = (a2 & bit) ? -1 : 1;
      dm[k + 1] = mx - my;
    }
    groups[dm] += std::norm(prepared.block(0)(x, y));
  }
  double total = 0.0;
  for (const auto& [dm, w] : groups) total += w;
  std::vector<ElementGroup> out;
  for (const auto& [dm, w] : groups) {
    ElementGroup g;
    g.coeff.resize(n + 1);
    g.coeff(0) = 0.5 * dm[0];
    for (int k = 0; k < n; ++k) g.coeff(k + 1) = 0.5 * dm[k + 1] * r;
    g.weight = total > 0.0 ? w / total : 1.0 / static_cast<double>(groups.size());
    out.push_back(std::move(g));
  }
  return out;
}

void require_cpmg_order(const Register& reg, int q) {
  if (q == 1) return;
  const auto orders = coherence_orders(reg.n_total());
  require(std::find(orders.begin(), orders.end(), q) != orders.end(), ErrorCode::kNoSuchOrder,
          "coherence order " + std::to_string(q) + " is not reachable for N=" + std::to_string(reg.n_total()));
}

}  // namespace

NoiseSpectrum NoiseSpectrum::ornstein_uhlenbeck(double sigma, double tau_c) {
  NoiseSpectrum s;
  s.form = Form::kOrnsteinUhlenbeck;
  s.sigma = sigma;
  s.tau_c = tau_c;
  return s;
}

NoiseSpectrum NoiseSpectrum::white(double s0) {
  NoiseSpectrum s;
  s.form = Form::kWhite;
  s.s0 = s0;
  return s;
}

NoiseSpectrum NoiseSpectrum::tabulated(std::vector<std::pair<double, double>> table) {
  NoiseSpectrum s;
  s.form = Form::kTable;
  s.table = std::move(table);
  return s;
}

double NoiseSpectrum::operator()(double omega) const {
  const ProcessParams p = process_params(*this);
  if (p.white) return p.s0;
  return 2.0 * p.sigma * p.sigma * p.tau_c / (1.0 + omega * omega * p.tau_c * p.tau_c);
}

OuFit fit_ornstein_uhlenbeck(const std::vector<std::pair<double, double>>& samples) {
  std::vector<double> xs, ys;
  for (const auto& [w, s] : samples) {
    require(std::isfinite(w) && std::isfinite(s) && s >= 0.0, ErrorCode::kInvalidArgument,
            "noise spectrum samples must be finite with S >= 0");
    if (s > 0.0) {
      xs.push_back(w * w);
      ys.push_back(1.0 / s);
    }
  }
  require(xs.size() >= 2, ErrorCode::kInvalidArgument, "need at least two positive spectrum samples to fit");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double b = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;
  const double a = my - b * mx;
  require(a > 0.0, ErrorCode::kInvalidArgument, "spectrum samples are not compatible with a Lorentzian");
  OuFit f;
  f.s0 = 1.0 / a;
  f.tau_c = std::sqrt(b / a);
  f.sigma = f.tau_c > 0.0 ? std::sqrt(f.s0 / (2.0 * f.tau_c)) : 0.0;
  return f;
}

NoisePathSampler::NoisePathSampler(const NoiseSpectrum& spectrum, double dt) : dt_(dt) {
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::kInvalidArgument, "noise time step must be positive");
  const ProcessParams p = process_params(spectrum);
  white_ = p.white;
  if (white_) {
    sigma_ = std::sqrt(p.s0 / dt);
    decay_ = 0.0;
    kick_ = sigma_;
  } else {
    sigma_ = p.sigma;
    decay_ = std::exp(-dt / p.tau_c);
    kick_ = p.sigma * std::sqrt(-std::expm1(-2.0 * dt / p.tau_c));
  }
}

void NoisePathSampler::sample(std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> path) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (path.size() == 0) return;
  double x = sigma_ * normal(rng);
  path(0) = x;
  for (Eigen::Index i = 1; i < path.size(); ++i) {
    x = decay_ * x + kick_ * normal(rng);
    path(i) = x;
  }
}

Eigen::MatrixXd sample_spin_noise(const NoisePathSampler& sampler, double cross_correlation, int n_spins,
                                  Eigen::Index steps, std::mt19937_64& rng) {
  require(cross_correlation >= -1.0 && cross_correlation <= 1.0, ErrorCode::kInvalidArgument,
          "noise cross_correlation must lie in [-1, 1]");
  const double c = std::abs(cross_correlation);
  const double shared = std::sqrt(c), own = std::sqrt(1.0 - c);
  Eigen::VectorXd common(steps), tmp(steps);
  sampler.sample(rng, common);
  Eigen::MatrixXd out(n_spins, steps);
  for (int k = 0; k < n_spins; ++k) {
    const double sign = (k == 0 && cross_correlation < 0.0) ? -1.0 : 1.0;
    if (own > 0.0) {
      sampler.sample(rng, tmp);
      out.row(k) = (sign * shared) * common.transpose() + own * tmp.transpose();
    } else {
      out.row(k) = (sign * shared) * common.transpose();
    }
  }
  return out;
}

std::vector<CpmgCurve> cpmg_decay(const Register& reg, const std::vector<int>& orders, const NoiseModel& noise,
                                  const CpmgOptions& opt) {
  require(!orders.empty(), ErrorCode::kInvalidArgument, "no coherence orders requested");
  for (int q : orders) require_cpmg_order(reg, q);
  require(std::isfinite(opt.tau) && opt.tau > 0.0, ErrorCode::kInvalidArgument, "cpmg tau must be positive");
  require(std::isfinite(opt.t_max) && opt.t_max >= 4.0 * opt.tau * (1.0 - 1e-12), ErrorCode::kInvalidArgument,
          "cpmg t_max must cover at least one echo cycle (4 tau)");
  require(opt.trials >= 1, ErrorCode::kInvalidArgument, "cpmg trials must be at least 1");
  require(opt.steps_per_tau >= 1, ErrorCode::kInvalidArgument, "cpmg steps_per_tau must be at least 1");
  const bool independent = noise.kind == NoiseKind::kIndependent;
  if (independent) {
    require(opt.backend == Backend::kDense, ErrorCode::kSymmetryViolation,
            "independent per-spin noise breaks ancilla permutation symmetry; use the dense backend");
    require(reg.n_total() <= kMaxIndependentQubits, ErrorCode::kBackendLimit,
            "independent-noise CPMG supports at most " + std::to_string(kMaxIndependentQubits) + " qubits");
  }

  const int spt = opt.steps_per_tau;
  const Eigen::Index cycles = static_cast<Eigen::Index>(std::floor(opt.t_max / (4.0 * opt.tau) + 1e-9));
  const Eigen::Index steps = cycles * 4 * spt;
  const double dt = opt.tau / spt;
  const NoisePathSampler sampler(noise.spectrum, dt);
  const int n_spins = independent ? reg.n_total() : 1;
  const std::size_t nq = orders.size();
  const Eigen::Index npts = cycles + 1;

  std::vector<std::vector<ElementGroup>> groups;
  std::vector<double> lops;
  for (int q : orders) {
    if (independent) groups.push_back(element_groups(reg, q));
    lops.push_back(lopsidedness(reg, q));
  }

  std::vector<double> toggle(steps);
  for (Eigen::Index i = 0; i < steps; ++i) toggle[i] = ((i + spt) / (2 * spt)) % 2 == 0 ? dt : -dt;

  const std::uint64_t chunks = (opt.trials + kStreamChunk - 1) / kStreamChunk;
  std::vector<Eigen::MatrixXd> s1(chunks), s2(chunks);
  parallel_for(chunks, opt.threads, [&](std::size_t c) {
    std::mt19937_64 rng = make_stream(noise.seed, c);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nq, npts), b = Eigen::MatrixXd::Zero(nq, npts);
    Eigen::MatrixXd phi(n_spins, npts);
    const std::uint64_t begin = c * kStreamChunk;
    const std::uint64_t end = std::min<std::uint64_t>(opt.trials, begin + kStreamChunk);
    for (std::uint64_t t = begin; t < end; ++t) {
      const Eigen::MatrixXd x = sample_spin_noise(sampler, independent ? noise.cross_correlation : 1.0, n_spins,
                                                  steps, rng);
      // Toggled phase: the sign flips at tau, 3 tau, 5 tau, ...
      for (int k = 0; k < n_spins; ++k) {
        double acc = 0.0;
        phi(k, 0) = 0.0;
        for (Eigen::Index i = 0; i < steps; ++i) {
          acc += toggle[i] * x(k, i);
          if ((i + 1) % (4 * spt) == 0) phi(k, (i + 1) / (4 * spt)) = acc;
        }
      }
      for (std::size_t iq = 0; iq < nq; ++iq) {
        Eigen::RowVectorXd v(npts);
        if (!independent) {
          v = (lops[iq] * phi.row(0)).array().cos();
        } else {
          v.setZero();
          for (const auto& g : groups[iq]) v += g.weight * (g.coeff * phi).array().cos().matrix();
        }
        a.row(iq) += v;
        b.row(iq) += v.cwiseAbs2();
      }
    }
    s1[c] = std::move(a);
    s2[c] = std::move(b);
  });

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nq, npts), b = Eigen::MatrixXd::Zero(nq, npts);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    a += s1[c];
    b += s2[c];
  }
  const double n = static_cast<double>(opt.trials);
  std::vector<CpmgCurve> out;
  for (std::size_t iq = 0; iq < nq; ++iq) {
    CpmgCurve curve;
    curve.q = orders[iq];
    curve.tau = opt.tau;
    curve.omega = kPi / (2.0 * opt.tau);
    for (Eigen::Index m = 0; m < npts; ++m) {
      const double mean = a(iq, m) / n;
      const double var = opt.trials > 1 ? std::max(0.0, (b(iq, m) - n * mean * mean) / (n - 1.0)) : 0.0;
      curve.points.push_back({4.0 * opt.tau * m, static_cast<int>(2 * m), mean, std::sqrt(var / n)});
    }
    out.push_back(std::move(curve));
  }
  return out;
}

CpmgCurve cpmg_decay(const Register& reg, int q, const NoiseModel& noise, const CpmgOptions& opt) {
  return cpmg_decay(reg, std::vector<int>{q}, noise, opt).front();
}

double cpmg_decay_rate(const CpmgCurve& curve, double floor) {
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : curve.points) {
    if (p.time <= 0.0 || !(p.coherence >= floor)) continue;
    const double w = p.coherence * p.coherence;
    sxy += w * p.time * -std::log(std::min(p.coherence, 1.0));
    sxx += w * p.time * p.time;
  }
  require(sxx > 0.0, ErrorCode::kInvalidArgument, "decay curve has no usable echo points above the floor");
  return sxy / sxx;
}

std::vector<SpectrumPoint> extract_noise_spectrum(const std::vector<CpmgCurve>& curves) {
  std::map<double, std::pair<double, int>> by_omega;
  for (const auto& c : curves) {
    auto& slot = by_omega[c.omega];
    slot.first += cpmg_decay_rate(c);
    slot.second += 1;
  }
  require(by_omega.size() >= 3, ErrorCode::kInsufficientFilters,
          "noise spectroscopy needs at least 3 distinct filter frequencies, got " + std::to_string(by_omega.size()));
  std::vector<SpectrumPoint> out;
  for (const auto& [w, acc] : by_omega) {
    const double rate = acc.first / acc.second;
    out.push_back({w, kPi * kPi * rate / 4.0, rate});
  }
  return out;
}

ProportionalFit fit_proportional(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::kInvalidArgument, "fit needs at least two points");
  double sxy = 0.0, sxx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    my += y[i] / static_cast<double>(y.size());
  }
  require(sxx > 0.0, ErrorCode::kInvalidArgument, "fit abscissae are all zero");
  ProportionalFit f;
  f.slope = sxy / sxx;
  double res = 0.0, tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    res += (y[i] - f.slope * x[i]) * (y[i] - f.slope * x[i]);
    tot += (y[i] - my) * (y[i] - my);
  }
  f.r2 = tot > 0.0 ? 1.0 - res / tot : 1.0;
  return f;
}

}  // namespace starreg
