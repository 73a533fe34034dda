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

#include "protocols/diffusion.hpp"

#include <cmath>
#include <random>
#include <string>

#include "core/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace starreg {

double lopsidedness(const Register& reg, int q) { return 1.0 + (q - 1) * reg.gamma_ratio(); }

void validate(const DiffusionParams& p) {
  require(std::isfinite(p.d_const) && p.d_const >= 0.0, ErrorCode::kInvalidArgument,
          "diffusion.d_const must be nonnegative");
  require(std::isfinite(p.delta_small) && p.delta_small > 0.0, ErrorCode::kInvalidArgument,
          "diffusion.delta_small must be positive");
  require(std::isfinite(p.delta_big) && p.delta_big > 0.0, ErrorCode::kInvalidArgument,
          "diffusion.delta_big must be positive");
  require(!p.g_z.empty(), ErrorCode::kInvalidArgument, "diffusion.g_z must list at least one gradient");
  for (double g : p.g_z)
    require(std::isfinite(g) && g >= 0.0, ErrorCode::kInvalidArgument, "diffusion.g_z entries must be nonnegative");
  require(p.trials >= 1, ErrorCode::kInvalidArgument, "diffusion.trials must be at least 1");
}

std::vector<DiffusionPoint> diffusion_decay_closed_form(const Register& reg, int q, const DiffusionParams& p) {
  validate(p);
  const double l = lopsidedness(reg, q);
  const double gc = reg.spec().gamma_c;
  std::vector<DiffusionPoint> out;
  for (double g : p.g_z) {
    const double k = l * gc * g * p.delta_small;
    out.push_back({g, std::exp(-k * k * p.d_const * p.delta_big), 0.0});
  }
  return out;
}

std::vector<std::vector<DiffusionPoint>> diffusion_monte_carlo(const Register& reg, const std::vector<int>& orders,
                                                               const DiffusionParams& p, int threads) {
  validate(p);
  const std::size_t ng = p.g_z.size(), nq = orders.size();
  const std::uint64_t chunks = (p.trials + kStreamChunk - 1) / kStreamChunk;
  const double sigma = std::sqrt(2.0 * p.d_const * p.delta_big);
  std::vector<double> k(nq * ng);
  for (std::size_t iq = 0; iq < nq; ++iq)
    for (std::size_t ig = 0; ig < ng; ++ig)
      k[iq * ng + ig] = lopsidedness(reg, orders[iq]) * reg.spec().gamma_c * p.g_z[ig] * p.delta_small;

  // Per-chunk sums of cos and cos^2, reduced in chunk order afterwards.
  std::vector<std::vector<double>> s1(chunks), s2(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::mt19937_64 rng = make_stream(p.seed, c);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::uint64_t begin = c * kStreamChunk;
    const std::uint64_t end = std::min<std::uint64_t>(p.trials, begin + kStreamChunk);
    std::vector<double> a(k.size(), 0.0), b(k.size(), 0.0);
    for (std::uint64_t t = begin; t < end; ++t) {
      const double dz = sigma * normal(rng);
      for (std::size_t i = 0; i < k.size(); ++i) {
        const double v = std::cos(k[i] * dz);
        a[i] += v;
        b[i] += v * v;
      }
    }
    s1[c] = std::move(a);
    s2[c] = std::move(b);
  });

  const double n = static_cast<double>(p.trials);
  std::vector<std::vector<DiffusionPoint>> out(nq);
  for (std::size_t iq = 0; iq < nq; ++iq) {
    for (std::size_t ig = 0; ig < ng; ++ig) {
      const std::size_t i = iq * ng + ig;
      double a = 0.0, b = 0.0;
      for (std::uint64_t c = 0; c < chunks; ++c) {
        a += s1[c][i];
        b += s2[c][i];
      }
      const double mean = a / n;
      const double var = p.trials > 1 ? std::max(0.0, (b - n * mean * mean) / (n - 1.0)) : 0.0;
      out[iq].push_back({p.g_z[ig], mean, std::sqrt(var / n)});
    }
  }
  return out;
}

std::vector<DiffusionPoint> diffusion_monte_carlo(const Register& reg, int q, const DiffusionParams& p, int threads) {
  return diffusion_monte_carlo(reg, std::vector<int>{q}, p, threads).front();
}

double log_decay_slope(const std::vector<DiffusionPoint>& curve, double floor) {
  double sxy = 0.0, sxx = 0.0;
  for (const auto& pt : curve) {
    if (!(pt.signal > floor)) continue;
    const double x = pt.g_z * pt.g_z;
    sxy += x * -std::log(pt.signal);
    sxx += x * x;
  }
  require(sxx > 0.0, ErrorCode::kInvalidArgument, "log_decay_slope: no usable nonzero-gradient points");
  return sxy / sxx;
}

}  // namespace starreg
