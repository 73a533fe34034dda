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

// Exercises the shared library strictly through its C header.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>

#include "starreg/starreg.h"

namespace {

starreg_register* make_register(int n) {
  starreg_register_spec spec;
  starreg_register_spec_default(&spec);
  spec.n_total = n;
  spec.j_ca = 11.0;
  starreg_register* reg = nullptr;
  REQUIRE(starreg_register_create(&spec, &reg) == STARREG_OK);
  return reg;
}

}  // namespace

TEST_CASE("capi: version and status names") {
  CHECK(std::string(starreg_version()) == "0.1.0");
  CHECK(std::string(starreg_status_name(STARREG_OK)) == "Ok");
  CHECK(std::string(starreg_status_name(STARREG_UNKNOWN_KEY)) == "UnknownKey");
  CHECK(std::string(starreg_status_name(STARREG_IO_ERROR)) == "IoError");
  CHECK(std::string(starreg_status_name(STARREG_INTERNAL)) == "Internal");
  CHECK(std::string(starreg_status_name(-7)) == "Unknown");
}

TEST_CASE("capi: register validation reports InvalidSpec with a message") {
  starreg_register_spec spec;
  starreg_register_spec_default(&spec);
  spec.n_total = 1;
  starreg_register* reg = nullptr;
  CHECK(starreg_register_create(&spec, &reg) == STARREG_INVALID_SPEC);
  CHECK(reg == nullptr);
  CHECK(std::string(starreg_last_error()).find("n_total") != std::string::npos);
  CHECK(starreg_register_create(nullptr, &reg) == STARREG_INVALID_ARGUMENT);
}

TEST_CASE("capi: thermal magnetizations and MSSM coherence") {
  const int n = 6;
  starreg_register* reg = make_register(n);
  double ec = 0.0, ea = 0.0;
  REQUIRE(starreg_register_purity(reg, &ec, &ea) == STARREG_OK);
  CHECK(ec > 0.0);
  CHECK(ea / ec == doctest::Approx(26.7522 / 10.8394).epsilon(1e-12));

  for (int backend : {STARREG_BACKEND_SYMMETRIC, STARREG_BACKEND_DENSE}) {
    starreg_state* rho = nullptr;
    REQUIRE(starreg_thermal_state(reg, backend, &rho) == STARREG_OK);
    double tr = 0.0, mc = 0.0, ma = 0.0;
    REQUIRE(starreg_state_trace(rho, &tr) == STARREG_OK);
    REQUIRE(starreg_state_expectation(rho, STARREG_IZ_CENTRAL, &mc) == STARREG_OK);
    REQUIRE(starreg_state_expectation(rho, STARREG_IZ_ANCILLA, &ma) == STARREG_OK);
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mc == doctest::Approx(ec / 2).epsilon(1e-12));
    CHECK(ma == doctest::Approx((n - 1) * ea / 2).epsilon(1e-12));

    starreg_state* mssm = nullptr;
    REQUIRE(starreg_prepare_mssm(rho, &mssm) == STARREG_OK);
    double w = 0.0, total = 0.0;
    for (int q = n; q >= -n + 2; q -= 2) {
      REQUIRE(starreg_coherence_weight(mssm, q, &w) == STARREG_OK);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(starreg_coherence_weight(mssm, n + 2, &w) == STARREG_NO_SUCH_ORDER);
    CHECK(starreg_state_expectation(mssm, 17, &w) == STARREG_INVALID_ARGUMENT);
    starreg_state_destroy(mssm);
    starreg_state_destroy(rho);
  }
  starreg_state* rho = nullptr;
  CHECK(starreg_thermal_state(reg, 5, &rho) == STARREG_INVALID_ARGUMENT);
  starreg_register_destroy(reg);
}

TEST_CASE("capi: config round trip, overrides and errors") {
  const char* text =
      "experiment = qfi\n[register]\nn_total = 4\n[qfi]\nn_values = 2, 3, 4\nepsilon_a = 1e-3\ncopies = 10\n";
  starreg_config* cfg = nullptr;
  REQUIRE(starreg_config_parse(text, &cfg) == STARREG_OK);
  CHECK(starreg_config_set(cfg, "", "seed", "42") == STARREG_OK);
  CHECK(starreg_config_set(cfg, "", "backend", "quantum") == STARREG_PARSE_ERROR);
  CHECK(starreg_config_set(cfg, "qfi", "copys", "3") == STARREG_UNKNOWN_KEY);
  CHECK(std::string(starreg_last_error()).find("copies") != std::string::npos);

  char* rendered = nullptr;
  REQUIRE(starreg_config_render(cfg, 1, &rendered) == STARREG_OK);
  CHECK(std::string(rendered).find("seed = 42") != std::string::npos);
  starreg_config* again = nullptr;
  CHECK(starreg_config_parse(rendered, &again) == STARREG_OK);
  char* rendered2 = nullptr;
  REQUIRE(starreg_config_render(again, 1, &rendered2) == STARREG_OK);
  CHECK(std::string(rendered) == std::string(rendered2));
  starreg_string_free(rendered);
  starreg_string_free(rendered2);
  starreg_config_destroy(again);

  char* exp = nullptr;
  REQUIRE(starreg_config_get_string(cfg, "", "experiment", &exp) == STARREG_OK);
  CHECK(std::string(exp) == "qfi");
  starreg_string_free(exp);

  starreg_config* bad = nullptr;
  CHECK(starreg_config_parse("experiment = qfi\n[register]\nn_total = 1\n", &bad) == STARREG_INVALID_SPEC);
  CHECK(starreg_config_parse("experiment = qfi\n[register]\njca = 1\n", &bad) == STARREG_UNKNOWN_KEY);
  CHECK(starreg_config_parse("experiment = qfi\n", &bad) == STARREG_MISSING_REQUIRED);
  CHECK(starreg_config_parse("experiment qfi\n", &bad) == STARREG_PARSE_ERROR);
  CHECK(std::string(starreg_last_error()).find("line 1") != std::string::npos);
  CHECK(starreg_config_load("/nonexistent/x.conf", &bad) == STARREG_IO_ERROR);
  CHECK(bad == nullptr);
  starreg_config_destroy(cfg);
}

TEST_CASE("capi: run, inspect and write a result") {
  starreg_config* cfg = nullptr;
  REQUIRE(starreg_config_parse(
              "experiment = qfi\n[register]\nn_total = 4\n[qfi]\nn_values = 2, 3, 4\nepsilon_a = 1e-3\ncopies = 10\n",
              &cfg) == STARREG_OK);
  starreg_result* res = nullptr;
  REQUIRE(starreg_run(cfg, &res) == STARREG_OK);
  size_t tables = 0, rows = 0, cols = 0;
  REQUIRE(starreg_result_table_count(res, &tables) == STARREG_OK);
  CHECK(tables == 1);
  REQUIRE(starreg_result_shape(res, 0, &rows, &cols) == STARREG_OK);
  CHECK(rows == 3);
  const char* name = nullptr;
  REQUIRE(starreg_result_table_name(res, 0, &name) == STARREG_OK);
  CHECK(std::string(name) == "qfi");
  int fisher_col = -1, ratio_col = -1;
  for (size_t c = 0; c < cols; ++c) {
    const char* col = nullptr;
    REQUIRE(starreg_result_column(res, 0, c, &col) == STARREG_OK);
    if (std::string(col) == "fisher") fisher_col = static_cast<int>(c);
    if (std::string(col) == "ratio") ratio_col = static_cast<int>(c);
  }
  REQUIRE(fisher_col >= 0);
  REQUIRE(ratio_col >= 0);
  for (size_t r = 0; r < rows; ++r) {
    double n = 0.0, f = 0.0, ratio = 0.0;
    REQUIRE(starreg_result_value(res, 0, r, 0, &n) == STARREG_OK);
    REQUIRE(starreg_result_value(res, 0, r, fisher_col, &f) == STARREG_OK);
    REQUIRE(starreg_result_value(res, 0, r, ratio_col, &ratio) == STARREG_OK);
    CHECK(f == doctest::Approx(1e-6 * (n - 1)).epsilon(1e-6));
    CHECK(ratio == doctest::Approx(n - 1).epsilon(1e-6));
  }
  double v = 0.0;
  CHECK(starreg_result_value(res, 0, rows, 0, &v) == STARREG_INDEX_OUT_OF_RANGE);
  CHECK(starreg_result_value(res, 1, 0, 0, &v) == STARREG_INDEX_OUT_OF_RANGE);

  char* csv = nullptr;
  REQUIRE(starreg_result_csv(res, 0, &csv) == STARREG_OK);
  CHECK(std::string(csv).rfind("n,epsilon_a,", 0) == 0);

  const auto dir = std::filesystem::temp_directory_path() / "starreg_capi_write";
  std::filesystem::remove_all(dir);
  REQUIRE(starreg_result_write(res, dir.string().c_str()) == STARREG_OK);
  CHECK(std::filesystem::exists(dir / "qfi.csv"));
  CHECK(std::filesystem::exists(dir / "qfi.meta"));
  CHECK(starreg_plot_csv((dir / "qfi.csv").string().c_str(), "line", nullptr) == STARREG_OK);
  CHECK(std::filesystem::exists(dir / "qfi.svg"));
  CHECK(starreg_plot_csv((dir / "qfi.csv").string().c_str(), "sticks", nullptr) == STARREG_COLUMN_MISMATCH);
  CHECK(starreg_plot_csv((dir / "qfi.csv").string().c_str(), "pie", nullptr) == STARREG_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);

  starreg_string_free(csv);
  starreg_result_destroy(res);
  starreg_config_destroy(cfg);
}

TEST_CASE("capi: last error is per thread") {
  starreg_config* bad = nullptr;
  REQUIRE(starreg_config_parse("nonsense\n", &bad) == STARREG_PARSE_ERROR);
  const std::string mine = starreg_last_error();
  std::string other;
  std::thread t([&] {
    starreg_register_spec spec;
    starreg_register_spec_default(&spec);
    spec.temperature = -1.0;
    starreg_register* reg = nullptr;
    starreg_register_create(&spec, &reg);
    other = starreg_last_error();
  });
  t.join();
  CHECK(std::string(starreg_last_error()) == mine);
  CHECK(other.find("temperature") != std::string::npos);
  CHECK(mine != other);
}

TEST_CASE("capi: null handles are rejected, destroy accepts null") {
  double v = 0.0;
  CHECK(starreg_state_trace(nullptr, &v) == STARREG_INVALID_ARGUMENT);
  CHECK(starreg_run(nullptr, nullptr) == STARREG_INVALID_ARGUMENT);
  starreg_register_destroy(nullptr);
  starreg_state_destroy(nullptr);
  starreg_config_destroy(nullptr);
  starreg_result_destroy(nullptr);
  starreg_string_free(nullptr);
}
