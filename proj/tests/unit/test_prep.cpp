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

#include <doctest.h>

#include <cmath>
#include <random>

#include "core/dicke.hpp"
#include "core/error.hpp"
#include "prep/state_prep.hpp"
#include "support/helpers.hpp"

using namespace starreg;
using starreg::testing::make_hot_register;
using starreg::testing::make_register;

namespace {

// Full-space basis index with the central qubit as the most significant bit.
int dense_index(int n, int c, int anc_bits) { return (c << n) | anc_bits; }

}  // namespace

TEST_CASE("thermal state populations") {
  const Register r2 = make_register(2);
  const State s2 = thermal_state(r2, Backend::kDense);
  const double ec = r2.epsilon_c(), ea = r2.epsilon_a();
  CHECK(std::abs(s2.block(0)(0, 0).real() + s2.block(0)(1, 1).real() - (1 + ec) / 2) < 1e-15);
  CHECK(std::abs(s2.block(0)(0, 0).real() - (1 + ec + ea) / 4) < 1e-15);

  RegisterSpec zero;
  zero.n_total = 4;
  zero.temperature = 1e30;
  const State mixed = thermal_state(Register(zero), Backend::kSymmetric);
  for (std::size_t b = 0; b < mixed.size(); ++b)
    CHECK((mixed.block(b) - Eigen::MatrixXcd::Identity(mixed.block(b).rows(), mixed.block(b).rows()) / 16.0)
              .cwiseAbs()
              .maxCoeff() < 1e-18);

  // Level-family populations against a direct sum over the dense diagonal.
  for (int n_total : {5, 10}) {
    const Register reg = make_register(n_total);
    const State d = thermal_state(reg, Backend::kDense);
    const int n = n_total - 1;
    double total = 0.0;
    for (int h = 0; h <= n; ++h) {
      double p0 = 0.0, p1 = 0.0;
      for (int a = 0; a < (1 << n); ++a) {
        if (__builtin_popcount(a) != h) continue;
        p0 += d.block(0)(dense_index(n, 0, a), dense_index(n, 0, a)).real();
        p1 += d.block(0)(dense_index(n, 1, a), dense_index(n, 1, a)).real();
      }
      const auto sp = subspace_populations(reg, h);
      CHECK(std::abs(sp.p0 - p0) < 1e-12);
      CHECK(std::abs(sp.p1 - p1) < 1e-12);
      total += sp.p0 + sp.p1;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(subspace_populations(make_register(3), 3), Error);

  // Exact Boltzmann mode: product of per-spin tanh populations.
  const Register hot = make_hot_register(3);
  const State ex = thermal_state(hot, Backend::kDense, ThermalModel::kExact);
  const double tc = std::tanh(hot.epsilon_c()), ta = std::tanh(hot.epsilon_a());
  CHECK(std::abs(ex.block(0)(0, 0).real() - 0.125 * (1 + tc) * (1 + ta) * (1 + ta)) < 1e-15);
  CHECK(std::abs(ex.trace() - 1.0) < 1e-14);
}

TEST_CASE("collective CNOT") {
  for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
    const LayoutPtr l = Layout::create(4, be);
    const OperatorSet o = operator_set(l);
    // |1>|all up>  ->  |1>|all down>
    const State g = ground_state(l);
    const State flipped_c = collective_rotation(g, {1, 0, 0}, kPi, Target::kCentral);
    const State out = collective_cnot(flipped_c);
    CHECK(expectation(out, o.iz_a) == doctest::Approx(-1.5));
    CHECK(expectation(out, o.iz_c) == doctest::Approx(-0.5));
    // Control off leaves everything unchanged.
    const State tilted = collective_rotation(g, {0, 1, 0}, 0.4, Target::kAncillas);
    CHECK(collective_cnot(tilted).max_abs_diff(tilted) < 1e-14);
    const Operator u = collective_cnot_operator(l);
    CHECK((u * u).max_abs_diff(Operator::identity(l)) < 1e-12);
  }
  // The symmetric form equals i^n exp(-i pi J_x) on the |1> half of each block.
  for (int n_total = 2; n_total <= 7; ++n_total) {
    const LayoutPtr l = Layout::create(n_total, Backend::kSymmetric);
    const Operator rx = rotation_operator(l, {1, 0, 0}, kPi, Target::kAncillas);
    const Operator u = collective_cnot_operator(l);
    const cplx in = std::pow(cplx(0, 1), n_total - 1);
    for (std::size_t b = 0; b < l->size(); ++b) {
      const int d = l->block(b).anc_dim;
      CHECK((u.block(b).bottomRightCorner(d, d) - in * rx.block(b).bottomRightCorner(d, d)).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
  // Random N=5 state: applying the gate twice is the identity.
  const Register reg = make_hot_register(5);
  std::mt19937_64 rng(3);
  State s = thermal_state(reg, Backend::kDense);
  s = collective_rotation(s, starreg::testing::random_axis(rng), 1.1, Target::kBoth);
  s = evolve(s, static_hamiltonian(reg, Backend::kDense), 0.01);
  CHECK(collective_cnot(collective_cnot(s), CnotDirection::kUntangle).max_abs_diff(s) < 1e-12);
}

TEST_CASE("MSSM preparation") {
  // Pure ground input gives the NOON state with a 1/2 coherence between |000> and |111>.
  const LayoutPtr l3 = Layout::create(3, Backend::kDense);
  const State noon = prepare_mssm(ground_state(l3));
  CHECK(std::abs(noon.block(0)(0, 7) - 0.5) < 1e-14);
  CHECK(std::abs(noon.block(0)(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(noon.block(0)(7, 7) - 0.5) < 1e-14);

  for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
    const State n4 = prepare_mssm(ground_state(Layout::create(4, be)));
    const auto d = coherence_decompose(n4);
    CHECK(d.weight(4) == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& e : d.entries)
      if (e.q != 4) CHECK(e.weight < 1e-14);
    // NOON is an element-level order-N coherence.
    const State sec = coherence_sector(n4, 4);
    CHECK(std::abs(sec.trace()) < 1e-14);
    CHECK(sec.max_abs_diff(coherence_sector(n4, -4)) == 0.0);
  }

  // The circuit is not self-inverse, but unprepare undoes it.
  const Register reg = make_hot_register(4);
  std::mt19937_64 rng(11);
  State s = collective_rotation(thermal_state(reg, Backend::kDense), starreg::testing::random_axis(rng), 0.9,
                                Target::kBoth);
  CHECK(unprepare_mssm(prepare_mssm(s)).max_abs_diff(s) < 1e-12);
  CHECK(prepare_mssm(prepare_mssm(s)).max_abs_diff(s) > 1e-3);
}

TEST_CASE("coherence weights of the thermal MSSM mixture") {
  for (int n_total = 2; n_total <= 10; ++n_total) {
    const Register reg = make_register(n_total);
    for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
      const auto d = coherence_decompose(prepare_mssm(thermal_state(reg, be)));
      double sum = 0.0;
      for (int h = 0; h < n_total; ++h) {
        const auto sp = subspace_populations(reg, h);
        CHECK(std::abs(d.weight(n_total - 2 * h) - (sp.p0 + sp.p1)) < 1e-12);
        sum += d.weight(n_total - 2 * h);
      }
      CHECK(std::abs(sum + d.p_diag - 1.0) < 1e-10);
    }
  }
  // Relative weights follow the Pascal row (exactly in the high-temperature limit).
  RegisterSpec lim;
  lim.n_total = 4;
  lim.temperature = 1e30;
  const auto d4 = coherence_decompose(prepare_mssm(thermal_state(Register(lim), Backend::kSymmetric)));
  const double unit = d4.weight(4);
  CHECK(std::abs(d4.weight(2) / unit - 3.0) < 1e-10);
  CHECK(std::abs(d4.weight(0) / unit - 3.0) < 1e-10);
  CHECK(std::abs(d4.weight(-2) / unit - 1.0) < 1e-10);
  // Highest order reached from a diagonal input is N.
  const auto orders = coherence_orders(6);
  CHECK(orders.front() == 6);
  CHECK(orders.back() == -4);
}

TEST_CASE("coherence filters") {
  const Register reg = make_hot_register(5);
  const State th = thermal_state(reg, Backend::kSymmetric);
  const State mssm = prepare_mssm(th);
  for (int q : coherence_orders(5)) {
    const State f = coherence_filter(mssm, q);
    CHECK(coherence_filter(f, q).max_abs_diff(f) == 0.0);
    const auto d = coherence_decompose(f);
    CHECK(std::abs(d.weight(q) - coherence_decompose(mssm).weight(q)) < 1e-12);
    for (const auto& e : d.entries)
      if (e.q != q) CHECK(e.weight == 0.0);
  }
  const State noon = prepare_mssm(ground_state(th.layout_ptr()));
  CHECK(coherence_filter(noon, 5).max_abs_diff(noon) < 1e-15);
  // A diagonal state only populates the element-level q = 0 sector.
  for (int q = 1; q <= 5; ++q) CHECK(coherence_sector(th, q).max_abs_diff(State(th.layout_ptr())) == 0.0);
  CHECK(coherence_sector(th, 0).max_abs_diff(th) == 0.0);
  CHECK_THROWS_AS(coherence_filter(mssm, 4), Error);
  try {
    coherence_filter(mssm, 7);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoSuchOrder);
  }
}

TEST_CASE("Pascal weights") {
  const auto w4 = pascal_weights(4);
  CHECK(w4.at(4) == 1);
  CHECK(w4.at(2) == 3);
  CHECK(w4.at(0) == 3);
  CHECK(w4.at(-2) == 1);
  const auto w2 = pascal_weights(2);
  CHECK(w2.size() == 2);
  CHECK(w2.at(2) == 1);
  CHECK(w2.at(0) == 1);
  for (int n = 2; n <= 30; ++n) {
    std::uint64_t s = 0;
    for (const auto& [q, p] : pascal_weights(n)) s += p;
    CHECK(s == (std::uint64_t{1} << (n - 1)));
  }
}

TEST_CASE("stick spectra") {
  const Register reg = make_register(10);
  const auto sp = stick_spectrum(reg, thermal_state(reg, Backend::kSymmetric), Channel::kCentral);
  REQUIRE(sp.lines.size() == 10);
  const double row[] = {1, 9, 36, 84, 126, 126, 84, 36, 9, 1};
  for (int h = 0; h < 10; ++h) {
    CHECK(sp.lines[h].amplitude == doctest::Approx(row[h] / 126.0).epsilon(1e-12));
    CHECK(sp.lines[h].frequency_hz == doctest::Approx(11.0 * (4.5 - h)));
  }
  const auto anc = stick_spectrum(reg, thermal_state(reg, Backend::kSymmetric), Channel::kAncilla);
  REQUIRE(anc.lines.size() == 2);
  CHECK(anc.lines[0].frequency_hz - anc.lines[1].frequency_hz == doctest::Approx(11.0));

  const Register flat = make_register(4, kGammaP31, kGammaH1, 0.0);
  const auto collapsed = stick_spectrum(flat, thermal_state(flat, Backend::kSymmetric), Channel::kCentral);
  for (const auto& line : collapsed.lines) CHECK(line.frequency_hz == 0.0);

  // N=4 amplitudes against a direct dense transition-moment sum over bit strings.
  const Register r4 = make_hot_register(4);
  std::mt19937_64 rng(5);
  State s = collective_rotation(thermal_state(r4, Backend::kDense), starreg::testing::random_axis(rng), 0.8,
                                Target::kAncillas);
  const auto got = stick_spectrum(r4, s, Channel::kCentral);
  const State th = thermal_state(r4, Backend::kDense);
  const auto raw = [](const State& st, int h) {
    double a = 0.0;
    for (int bits = 0; bits < 8; ++bits)
      if (__builtin_popcount(bits) == h)
        a += 0.25 * (st.block(0)(bits, bits).real() - st.block(0)(8 + bits, 8 + bits).real());
    return a;
  };
  double scale = 0.0;
  for (int h = 0; h < 4; ++h) scale = std::max(scale, std::abs(raw(th, h)));
  for (int h = 0; h < 4; ++h) CHECK(std::abs(got.lines[h].amplitude - raw(s, h) / scale) < 1e-10);
  const auto sym = stick_spectrum(r4, collective_rotation(thermal_state(r4, Backend::kSymmetric),
                                                          {0.6, 0.0, 0.8}, 0.8, Target::kAncillas),
                                  Channel::kAncilla);
  const auto den = stick_spectrum(r4, collective_rotation(thermal_state(r4, Backend::kDense),
                                                          {0.6, 0.0, 0.8}, 0.8, Target::kAncillas),
                                  Channel::kAncilla);
  for (int k = 0; k < 2; ++k) CHECK(std::abs(sym.lines[k].amplitude - den.lines[k].amplitude) < 1e-10);
}
