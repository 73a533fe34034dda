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

#include "protocols/hbac.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace starreg {

namespace {

constexpr int kCeilingMaxQubits = 20;

struct Reset {
  double p_anc;
  double p_central;
};

Reset reset_probabilities(const Register& reg, const HbacSchedule& s) {
  require(s.iterations >= 1, ErrorCode::kInvalidArgument, "hbac.iterations must be at least 1");
  require(std::isfinite(s.tau_hb) && s.tau_hb > 0.0, ErrorCode::kInvalidArgument, "hbac.tau_hb must be positive");
  require(reg.spec().t1_c.has_value() && reg.spec().t1_a.has_value(), ErrorCode::kMissingRelaxationTimes,
          "HBAC needs register.t1_c and register.t1_a");
  const double pa = s.reset_model == ResetModel::kFull ? 1.0 : -std::expm1(-s.tau_hb / *reg.spec().t1_a);
  return {pa, -std::expm1(-s.tau_hb / *reg.spec().t1_c)};
}

// Population-level state: per block, one population per position (central slow).
struct PopState {
  std::vector<Eigen::VectorXd> pops;
  std::vector<double> mult;
  std::vector<int> anc_dim;
  std::vector<Eigen::VectorXd> anc_thermal;  // per-copy thermal ancilla populations
  std::vector<std::vector<int>> rank;
};

PopState initial_state(const Layout& layout, double eps_c, double eps_a) {
  PopState s;
  const int n_total = layout.n_total();
  for (const Block& blk : layout.blocks()) {
    Eigen::VectorXd p(blk.dim()), th(blk.anc_dim);
    for (int a = 0; a < blk.anc_dim; ++a) th(a) = std::ldexp(1.0 + blk.two_m_anc[a] * eps_a, -(n_total - 1));
    for (int pos = 0; pos < blk.dim(); ++pos) {
      const double sc = pos < blk.anc_dim ? 1.0 : -1.0;
      p(pos) = 0.5 * (1.0 + sc * eps_c) * th(pos % blk.anc_dim);
    }
    std::vector<int> rank(blk.anc_dim);
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](int x, int y) { return th(x) > th(y); });
    s.pops.push_back(std::move(p));
    s.mult.push_back(static_cast<double>(blk.multiplicity));
    s.anc_dim.push_back(blk.anc_dim);
    s.anc_thermal.push_back(std::move(th));
    s.rank.push_back(std::move(rank));
  }
  return s;
}

double central_iz(const PopState& s) {
  double acc = 0.0;
  for (std::size_t b = 0; b < s.pops.size(); ++b) {
    const int d = s.anc_dim[b];
    acc += s.mult[b] * 0.5 * (s.pops[b].head(d).sum() - s.pops[b].tail(d).sum());
  }
  return acc;
}

void reset(PopState& s, const Reset& r, double eps_c) {
  // Central marginal, then replace the ancillas with probability p_anc.
  double pc0 = 0.0, pc1 = 0.0;
  for (std::size_t b = 0; b < s.pops.size(); ++b) {
    const int d = s.anc_dim[b];
    pc0 += s.mult[b] * s.pops[b].head(d).sum();
    pc1 += s.mult[b] * s.pops[b].tail(d).sum();
  }
  const double c_th[2] = {0.5 * (1.0 + eps_c), 0.5 * (1.0 - eps_c)};
  for (std::size_t b = 0; b < s.pops.size(); ++b) {
    const int d = s.anc_dim[b];
    Eigen::VectorXd& p = s.pops[b];
    p.head(d) = (1.0 - r.p_anc) * p.head(d) + r.p_anc * pc0 * s.anc_thermal[b];
    p.tail(d) = (1.0 - r.p_anc) * p.tail(d) + r.p_anc * pc1 * s.anc_thermal[b];
    const Eigen::VectorXd anc = p.head(d) + p.tail(d);
    p.head(d) = (1.0 - r.p_central) * p.head(d) + r.p_central * c_th[0] * anc;
    p.tail(d) = (1.0 - r.p_central) * p.tail(d) + r.p_central * c_th[1] * anc;
  }
}

HbacSeries iterate(PopState s, const Reset& r, double eps_c, int iterations) {
  const double sign = eps_c >= 0.0 ? 1.0 : -1.0;
  const double iz_th = central_iz(s);
  require(iz_th != 0.0, ErrorCode::kInvalidArgument, "central thermal polarization is zero; M_n is undefined");
  HbacSeries out;
  out.m.push_back(1.0);
  out.iz_central.push_back(iz_th);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t b = 0; b < s.pops.size(); ++b) s.pops[b] = compress_block(s.pops[b], s.anc_dim[b], sign, s.rank[b]);
    reset(s, r, eps_c);
    const double iz = central_iz(s);
    out.iz_central.push_back(iz);
    out.m.push_back(iz / iz_th);
  }
  return out;
}

}  // namespace

Eigen::VectorXd compress_block(const Eigen::VectorXd& pops, int anc_dim, double sign, const std::vector<int>& rank) {
  require(pops.size() == 2 * anc_dim && static_cast<int>(rank.size()) == anc_dim, ErrorCode::kShapeMismatch,
          "compress_block: population vector does not match the block");
  std::vector<double> v(pops.data(), pops.data() + pops.size());
  std::sort(v.begin(), v.end(), std::greater<double>());
  const int favoured = sign >= 0.0 ? 0 : 1;
  Eigen::VectorXd out(pops.size());
  for (int i = 0; i < anc_dim; ++i) {
    out(favoured * anc_dim + rank[i]) = v[i];
    out((1 - favoured) * anc_dim + rank[i]) = v[anc_dim + i];
  }
  return out;
}

HbacSeries hbac_run(const Register& reg, const HbacSchedule& schedule, Backend backend) {
  const Reset r = reset_probabilities(reg, schedule);
  const LayoutPtr layout = Layout::create(reg.n_total(), backend);
  return iterate(initial_state(*layout, reg.epsilon_c(), reg.epsilon_a()), r, reg.epsilon_c(), schedule.iterations);
}

HbacSeries hbac_sorting_ceiling(const Register& reg, const HbacSchedule& schedule) {
  const Reset r = reset_probabilities(reg, schedule);
  require(reg.n_total() <= kCeilingMaxQubits, ErrorCode::kBackendLimit,
          "sorting ceiling enumerates 2^N populations; N must be at most " + std::to_string(kCeilingMaxQubits));
  // One block holding every bit string, so compression may reach any permutation.
  const int n = reg.n_ancilla();
  PopState s;
  const int d = 1 << n;
  Eigen::VectorXd th(d), p(2 * d);
  for (int a = 0; a < d; ++a) {
    const int two_m = n - 2 * std::popcount(static_cast<unsigned>(a));
    th(a) = std::ldexp(1.0 + two_m * reg.epsilon_a(), -n);
  }
  for (int pos = 0; pos < 2 * d; ++pos) p(pos) = 0.5 * (1.0 + (pos < d ? 1.0 : -1.0) * reg.epsilon_c()) * th(pos % d);
  std::vector<int> rank(d);
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(), [&](int x, int y) { return th(x) > th(y); });
  s.pops.push_back(std::move(p));
  s.mult.push_back(1.0);
  s.anc_dim.push_back(d);
  s.anc_thermal.push_back(std::move(th));
  s.rank.push_back(std::move(rank));
  return iterate(std::move(s), r, reg.epsilon_c(), schedule.iterations);
}

}  // namespace starreg
