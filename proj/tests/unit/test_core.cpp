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

#include <algorithm>
#include <cmath>
#include <random>

#include "core/dicke.hpp"
#include "core/dynamics.hpp"
#include "core/error.hpp"
#include "core/register.hpp"
#include "core/space.hpp"
#include "prep/state_prep.hpp"
#include "support/helpers.hpp"

using namespace starreg;
using starreg::testing::make_register;
using starreg::testing::make_hot_register;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST_CASE("register validation and derived quantities") {
  const Register tmp = make_register(10, kGammaP31, kGammaH1, 11.0);
  CHECK(tmp.n_ancilla() == 9);
  CHECK(tmp.omega_c() == doctest::Approx(-kGammaP31 * 11.7));
  CHECK(tmp.epsilon_a() / tmp.epsilon_c() == doctest::Approx(kGammaH1 / kGammaP31));
  // Independent evaluation of hbar gamma B / (k T).
  CHECK(tmp.epsilon_a() == doctest::Approx(1.054571817e-34 * 26.7522e7 * 11.7 / (1.380649e-23 * 298.0)).epsilon(1e-12));

  CHECK_NOTHROW(make_register(2, 1e7, 1e7, 0.0));
  CHECK(code_of([] { make_register(1); }) == ErrorCode::kInvalidSpec);

  RegisterSpec bad;
  bad.b0 = -1.0;
  try {
    build_register(bad);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSpec);
    CHECK(std::string(e.what()).find("b0") != std::string::npos);
  }
  bad = RegisterSpec{};
  bad.t1_a = 0.0;
  CHECK(code_of([&] { build_register(bad); }) == ErrorCode::kInvalidSpec);

  // Negative gyromagnetic ratios flow through epsilon and omega.
  const Register si = make_register(3, kGammaSi29, kGammaH1);
  CHECK(si.epsilon_c() < 0.0);
  CHECK(si.omega_c() > 0.0);
}

TEST_CASE("Dicke multiplicities fill the ancilla space") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
  for (int n_total = 2; n_total <= 40; ++n_total) {
    const int n = n_total - 1;
    unsigned __int128 total = 0;
    for (int two_j = n; two_j >= 0; two_j -= 2)
      total += static_cast<unsigned __int128>(dicke_multiplicity(n, two_j)) * (two_j + 1);
    CHECK(total == (static_cast<unsigned __int128>(1) << n));
  }
  // n = 4: j = 2, 1, 0 with multiplicities 1, 3, 2.
  CHECK(dicke_multiplicity(4, 4) == 1);
  CHECK(dicke_multiplicity(4, 2) == 3);
  CHECK(dicke_multiplicity(4, 0) == 2);
}

TEST_CASE("operator algebra holds in both representations") {
  for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
    const LayoutPtr l = Layout::create(5, be);
    const OperatorSet o = operator_set(l);
    const cplx i(0, 1);
    const auto comm = [](const Operator& a, const Operator& b) { return a * b - b * a; };
    CHECK(comm(o.ix_c, o.iy_c).max_abs_diff(i * o.iz_c) < 1e-12);
    CHECK(comm(o.iy_c, o.iz_c).max_abs_diff(i * o.ix_c) < 1e-12);
    CHECK(comm(o.ix_a, o.iy_a).max_abs_diff(i * o.iz_a) < 1e-12);
    CHECK(comm(o.iz_a, o.ix_a).max_abs_diff(i * o.iy_a) < 1e-12);
    CHECK(comm(o.ix_c, o.ix_a).max_abs_diff(Operator::zero(l)) < 1e-12);
    if (be == Backend::kSymmetric) {
      const Operator casimir = o.ix_a * o.ix_a + o.iy_a * o.iy_a + o.iz_a * o.iz_a;
      for (std::size_t b = 0; b < l->size(); ++b) {
        const double j = 0.5 * l->block(b).two_j;
        const Eigen::MatrixXcd expect = j * (j + 1) * Eigen::MatrixXcd::Identity(l->block(b).dim(), l->block(b).dim());
        CHECK((casimir.block(b) - expect).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  CHECK(code_of([] { ancilla_spin_op(Layout::create(4, Backend::kSymmetric), 0, Axis::kZ); }) ==
        ErrorCode::kSymmetryViolation);
  CHECK(code_of([] { Layout::create(15, Backend::kDense); }) == ErrorCode::kBackendLimit);
}

TEST_CASE("static Hamiltonian matches the two-subspace level table") {
  for (int n_total = 2; n_total <= 6; ++n_total) {
    const Register reg = make_register(n_total, kGammaP31, kGammaH1, 11.0);
    const int n = n_total - 1;
    const double wc = reg.omega_c(), wa = reg.omega_a(), pj = kPi * 11.0;
    // E(c, h) = +-w_C/2 + m_h (w_A +- pi J) with degeneracy C(n, h).
    std::vector<double> table;
    for (int h = 0; h <= n; ++h) {
      const double m = 0.5 * n - h;
      for (std::uint64_t d = 0; d < binomial(n, h); ++d) {
        table.push_back(0.5 * wc + m * (wa + pj));
        table.push_back(-0.5 * wc + m * (wa - pj));
      }
    }
    std::sort(table.begin(), table.end());
    for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
      const auto ev = eigenvalue_multiset(static_hamiltonian(reg, be));
      REQUIRE(ev.size() == table.size());
      double worst = 0.0;
      for (std::size_t k = 0; k < ev.size(); ++k) worst = std::max(worst, std::abs(ev[k] - table[k]) / std::abs(wa));
      CHECK(worst < 1e-12);
    }
  }
  // N = 2 explicit: four levels.
  const Register r2 = make_register(2);
  const auto ev = eigenvalue_multiset(static_hamiltonian(r2, Backend::kSymmetric));
  CHECK(ev.size() == 4);
  CHECK(code_of([] { static_hamiltonian(make_register(15), Backend::kDense); }) == ErrorCode::kBackendLimit);
}

TEST_CASE("rotating-frame Hamiltonian terms") {
  const Register reg = make_register(4, kGammaP31, kGammaH1, 11.0);
  const LayoutPtr l = make_layout(reg, Backend::kSymmetric);
  const OperatorSet o = operator_set(l);
  RotatingFrameParams p;
  const Operator coupling = (2.0 * kPi * 11.0) * (o.iz_c * o.iz_a);
  CHECK(rotating_frame_hamiltonian(reg, p, Backend::kSymmetric).max_abs_diff(coupling) < 1e-12);
  p.omega_rf_c = 1234.5;
  const Operator h = rotating_frame_hamiltonian(reg, p, Backend::kSymmetric);
  CHECK(h.max_abs_diff(coupling + 1234.5 * o.ix_c) < 1e-12);
  p.phi_c = -kPi / 2;
  CHECK(normalized(p).phi_c == doctest::Approx(1.5 * kPi));
  p.omega_rf_a = -1.0;
  CHECK(code_of([&] { rotating_frame_hamiltonian(reg, p, Backend::kSymmetric); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("evolution is unitary and periodic") {
  const Register reg = make_hot_register(4);
  for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
    const State th = thermal_state(reg, be);
    const State s = collective_rotation(th, {1, 0, 0}, 0.7, Target::kBoth);
    const Operator h0 = static_hamiltonian(reg, be);
    CHECK(evolve(s, h0, 0.0).max_abs_diff(s) == 0.0);
    const State e = evolve(s, h0, 1.0 / (4.0 * 11.0));
    CHECK(std::abs(e.trace() - 1.0) < 1e-10);
    CHECK(std::abs(e.purity() - s.purity()) < 1e-10);
    CHECK(e.is_hermitian(1e-10));
    CHECK_NOTHROW(e.validate());

    // Full Larmor period of a central Zeeman term restores the state.
    const OperatorSet o = operator_set(th.layout_ptr());
    const double w = 2.0 * kPi * 100.0;
    CHECK(evolve(s, w * o.iz_c, 2.0 * kPi / w).max_abs_diff(s) < 1e-10);
  }
  const State a = thermal_state(reg, Backend::kSymmetric);
  const Operator hd = static_hamiltonian(reg, Backend::kDense);
  CHECK(code_of([&] { evolve(a, hd, 1.0); }) == ErrorCode::kShapeMismatch);
}

TEST_CASE("collective rotations") {
  const Register reg = make_hot_register(4);
  for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
    const LayoutPtr l = make_layout(reg, be);
    const State g = ground_state(l);
    CHECK(collective_rotation(g, {0, 1, 0}, 2.0 * kPi, Target::kCentral).max_abs_diff(g) < 1e-12);
    // Hadamard-like pi/2 y rotation on the central spin gives equal central populations.
    const OperatorSet o = operator_set(l);
    const State hd = apply_unitary(central_hadamard_operator(l), g);
    CHECK(expectation(hd, o.iz_c) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(expectation(hd, o.ix_c) == doctest::Approx(0.5));
    // Rotating all spins about y by pi/2 leaves each spin along +x.
    const State rx = collective_rotation(g, {0, 1, 0}, kPi / 2, Target::kBoth);
    CHECK(expectation(rx, o.ix_a) == doctest::Approx(1.5));
    CHECK(expectation(rx, o.ix_c) == doctest::Approx(0.5));
  }
  // Symmetric and dense agree on an x rotation by pi - e of all spins.
  const double e = 0.1 * kPi;
  const auto ms = starreg::testing::collective_moments(
      collective_rotation(thermal_state(reg, Backend::kSymmetric), {1, 0, 0}, kPi - e, Target::kBoth));
  const auto md = starreg::testing::collective_moments(
      collective_rotation(thermal_state(reg, Backend::kDense), {1, 0, 0}, kPi - e, Target::kBoth));
  CHECK(starreg::testing::max_abs_diff(ms, md) < 1e-10);
  CHECK(code_of([&] { rotation_operator(make_layout(reg, Backend::kDense), {1, 1, 0}, 1.0, Target::kBoth); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("expectation values") {
  const Register reg = make_register(7);
  for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
    const State th = thermal_state(reg, be);
    const OperatorSet o = operator_set(th.layout_ptr());
    CHECK(expectation(th, Operator::identity(th.layout_ptr())) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(expectation(th, o.iz_c) - reg.epsilon_c() / 2) < 1e-14);
    CHECK(std::abs(expectation(th, o.iz_a) - 6 * reg.epsilon_a() / 2) < 1e-14);
    const Operator nonherm = o.ix_c * o.iy_c;
    CHECK(code_of([&] { expectation(th, nonherm); }) == ErrorCode::kNonHermitianObservable);
  }
}

TEST_CASE("dense and symmetric evolution agree under the static and rotating-frame Hamiltonians") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n_total = 2; n_total <= 6; ++n_total) {
    const Register reg = make_hot_register(n_total, 11.0);
    RotatingFrameParams p;
    p.nu_c = 40.0 * u(rng);
    p.nu_a = 40.0 * u(rng);
    p.omega_rf_c = 300.0 * u(rng);
    p.omega_rf_a = 300.0 * u(rng);
    p.phi_c = 6.0 * u(rng);
    p.phi_a = 6.0 * u(rng);
    std::vector<std::vector<double>> m;
    for (Backend be : {Backend::kSymmetric, Backend::kDense}) {
      State s = prepare_mssm(thermal_state(reg, be));
      s = evolve(s, static_hamiltonian(reg, be), 1.0 / (4.0 * 11.0));
      s = evolve(s, rotating_frame_hamiltonian(reg, p, be), 0.013);
      m.push_back(starreg::testing::collective_moments(s));
    }
    CHECK(starreg::testing::max_abs_diff(m[0], m[1]) < 1e-10);
  }
}
