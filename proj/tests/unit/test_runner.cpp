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
#include <filesystem>
#include <functional>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "core/error.hpp"
#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/plot.hpp"

using namespace starreg;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kDiffusion = R"(# minimal diffusion run
experiment = diffusion

[register]
n_total = 10
j_ca = 11

[diffusion]
d_const = 2e-9
delta_small = 2e-3
delta_big = 0.05
g_z = 0, 0.01, 0.02
trials = 2000
)";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("starreg_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int count_of(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("config: minimal diffusion config parses with documented defaults") {
  const ExperimentConfig c = parse_config(kDiffusion);
  CHECK(c.experiment() == "diffusion");
  CHECK(c.get_int("register", "n_total") == 10);
  CHECK(c.get_real("register", "b0") == 11.7);
  CHECK(c.get_uint("", "seed") == 0);
  CHECK(c.get_string("", "backend") == "auto");
  CHECK(c.get_string("diffusion", "method") == "both");
  CHECK(c.get_reals("diffusion", "g_z") == std::vector<double>{0.0, 0.01, 0.02});
  CHECK_FALSE(c.has("register", "t1_c"));
}

TEST_CASE("config: misspelled key names the nearest valid key") {
  std::string text = kDiffusion;
  text.replace(text.find("j_ca"), 4, "jca");
  CHECK(code_of([&] { parse_config(text); }) == ErrorCode::kUnknownKey);
  const std::string msg = message_of([&] { parse_config(text); });
  CHECK(msg.find("'j_ca'") != std::string::npos);
  CHECK(msg.find("line 6") != std::string::npos);

  const std::string bad_section = std::string(kDiffusion) + "\n[difusion]\n";
  CHECK(code_of([&] { parse_config(bad_section); }) == ErrorCode::kUnknownKey);
  CHECK(message_of([&] { parse_config(bad_section); }).find("[diffusion]") != std::string::npos);

  const std::string foreign = std::string(kDiffusion) + "\n[dtc]\nerrors = 0\n";
  CHECK(code_of([&] { parse_config(foreign); }) == ErrorCode::kUnknownKey);
}

TEST_CASE("config: invalid register and missing keys fail before any simulation") {
  std::string n1 = kDiffusion;
  n1.replace(n1.find("n_total = 10"), 12, "n_total = 1");
  CHECK(code_of([&] { parse_config(n1); }) == ErrorCode::kInvalidSpec);

  std::string no_g = kDiffusion;
  no_g.erase(no_g.find("g_z"), no_g.find("trials") - no_g.find("g_z"));
  CHECK(code_of([&] { parse_config(no_g); }) == ErrorCode::kMissingRequired);

  std::string no_n = kDiffusion;
  no_n.erase(no_n.find("n_total = 10"), 12);
  CHECK(code_of([&] { parse_config(no_n); }) == ErrorCode::kMissingRequired);

  CHECK(code_of([] { parse_config("[register]\nn_total = 3\n"); }) == ErrorCode::kMissingRequired);
  CHECK(code_of([] { parse_config("experiment = chaos\n[chaos]\nk = 0\n"); }) == ErrorCode::kMissingRequired);

  CHECK(code_of([] { parse_config("experiment = noon\nbackend = dense\n[register]\nn_total = 20\n"); }) ==
        ErrorCode::kBackendLimit);
}

TEST_CASE("config: syntax errors carry the line number") {
  std::string text = kDiffusion;
  text.replace(text.find("delta_small = 2e-3"), 18, "delta_small 2e-3");
  CHECK(code_of([&] { parse_config(text); }) == ErrorCode::kParseError);
  CHECK(message_of([&] { parse_config(text); }).find("line 10") != std::string::npos);

  std::string typed = kDiffusion;
  typed.replace(typed.find("trials = 2000"), 13, "trials = many");
  CHECK(code_of([&] { parse_config(typed); }) == ErrorCode::kParseError);

  const std::string dup = std::string(kDiffusion) + "trials = 10\n";
  CHECK(code_of([&] { parse_config(dup); }) == ErrorCode::kParseError);

  CHECK(code_of([] { parse_config("experiment = diffusion\n[register\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_config("experiment = warp\n[register]\nn_total = 2\n"); }) == ErrorCode::kParseError);
}

TEST_CASE("config: pi suffix on real values") {
  const ExperimentConfig c =
      parse_config("experiment = dtc\n[register]\nn_total = 3\n[dtc]\nerrors = 0, 0.25pi, 0.125*pi\njt = pi\n");
  const auto e = c.get_reals("dtc", "errors");
  REQUIRE(e.size() == 3);
  CHECK(e[1] == 0.25 * M_PI);
  CHECK(e[2] == 0.125 * M_PI);
  CHECK(c.get_real("dtc", "jt") == M_PI);
  CHECK(code_of([] { parse_config("experiment = dtc\n[register]\nn_total = 3\n[dtc]\nerrors = 0.5pi\n"); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("config: render then parse reproduces every shipped config") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(STARREG_CONFIG_DIR)) {
    if (entry.path().extension() != ".conf") continue;
    ++seen;
    CAPTURE(entry.path().string());
    const ExperimentConfig c = load_config(entry.path().string());
    CHECK(parse_config(render_config(c)) == c);
    const ExperimentConfig resolved = parse_config(render_config(c, true));
    CHECK(parse_config(render_config(resolved, true)) == resolved);
    CHECK(render_config(resolved, true) == render_config(c, true));
  }
  CHECK(seen == 10);
}

TEST_CASE("config: overrides are type checked") {
  ExperimentConfig c = parse_config(kDiffusion);
  set_config_value(c, "", "seed", "18446744073709551615");
  CHECK(c.get_uint("", "seed") == 18446744073709551615ULL);
  CHECK(code_of([&] { set_config_value(c, "", "seed", "-1"); }) == ErrorCode::kParseError);
  CHECK(code_of([&] { set_config_value(c, "", "backend", "gpu"); }) == ErrorCode::kParseError);
  CHECK(code_of([&] { set_config_value(c, "", "sead", "1"); }) == ErrorCode::kUnknownKey);
  CHECK(code_of([&] { set_config_value(c, "", "threads", "0"); }) == ErrorCode::kInvalidArgument);
  CHECK(c.get_uint("", "seed") == 18446744073709551615ULL);
}

TEST_CASE("config: auto backend keeps permutation symmetry unless the noise is independent") {
  CHECK(resolve_backend(parse_config(kDiffusion)) == Backend::kSymmetric);
  const ExperimentConfig indep = parse_config(
      "experiment = noise\n[register]\nn_total = 4\n[noise]\nkind = independent\nfrequencies = 10, 20, 40\nt_max = 0.1\n");
  CHECK(resolve_backend(indep) == Backend::kDense);
}

TEST_CASE("experiments: chaos at k = 0 never entangles") {
  const ExperimentConfig c = parse_config(
      "experiment = chaos\n[register]\nn_total = 6\n[chaos]\nk = 0\nn_theta = 6\nn_phi = 5\nn_kicks = 40\n"
      "average_window = 20\n");
  const ExperimentResult r = run_experiment(c);
  REQUIRE(r.tables.size() == 1);
  const Table& t = r.tables[0];
  CHECK(t.name == "chaos");
  REQUIRE(t.columns.back() == "mean_entropy");
  CHECK(t.rows.size() == 30);
  for (const auto& row : t.rows) {
    CHECK(row.back() >= 0.0);
    CHECK(row.back() < 1e-10);
  }
}

TEST_CASE("experiments: dtc without pulse error peaks exactly at half the drive frequency") {
  const ExperimentConfig c =
      parse_config("experiment = dtc\n[register]\nn_total = 6\n[dtc]\nperiod = 0.002\nerrors = 0\nn_periods = 64\n");
  const ExperimentResult r = run_experiment(c);
  const Table& t = r.tables.at(0);
  REQUIRE(t.columns[1] == "peak_freq");
  CHECK(t.rows.at(0)[1] == 0.5 / 0.002);
  CHECK(t.rows.at(0).back() == 0.5 / 0.002);
}

TEST_CASE("experiments: qfi table matches the Cramer-Rao arithmetic") {
  const ExperimentConfig c = parse_config(
      "experiment = qfi\n[register]\nn_total = 4\n[qfi]\nn_values = 2, 4\nepsilon_a = 1e-3\ncopies = 25\n");
  const ExperimentResult r = run_experiment(c);
  const Table& t = r.tables.at(0);
  for (const auto& row : t.rows) {
    CHECK(row[5] == 1.0 / (25.0 * row[4]));
    CHECK(row[4] == doctest::Approx(1e-6 * (row[0] - 1)).epsilon(1e-6));
  }
}

TEST_CASE("experiments: same config gives byte-identical CSV across runs and thread counts") {
  const std::vector<std::string> configs = {
      std::string(kDiffusion) + "method = monte_carlo\n",
      "experiment = noise\nseed = 5\n[register]\nn_total = 3\n[noise]\nsigma = 5\norders = 1, 3\n"
      "frequencies = 20, 40, 80\nt_max = 0.2\ntrials = 300\n",
      "experiment = noise\nseed = 5\n[register]\nn_total = 3\n[noise]\nsigma = 5\nkind = independent\n"
      "cross_correlation = 0.5\norders = 1, 3\nfrequencies = 20, 40, 80\nt_max = 0.2\ntrials = 200\n",
      "experiment = chaos\n[register]\nn_total = 5\n[chaos]\nk = 3\nn_theta = 4\nn_phi = 4\nn_kicks = 30\n"
      "average_window = 10\n",
      "experiment = dtc\n[register]\nn_total = 5\n[dtc]\nerrors = 0.1, 0.2, 0.3\nn_periods = 40\n",
  };
  for (const auto& text : configs) {
    CAPTURE(text);
    ExperimentConfig serial = parse_config(text);
    ExperimentConfig parallel = serial;
    set_config_value(parallel, "", "threads", "4");
    const ExperimentResult a = run_experiment(serial), b = run_experiment(serial), p = run_experiment(parallel);
    REQUIRE(a.tables.size() == p.tables.size());
    for (std::size_t i = 0; i < a.tables.size(); ++i) {
      CHECK(to_csv(a.tables[i]) == to_csv(b.tables[i]));
      CHECK(to_csv(a.tables[i]) == to_csv(p.tables[i]));
    }
  }
}

TEST_CASE("experiments: different seeds change Monte Carlo output") {
  ExperimentConfig a = parse_config(std::string(kDiffusion) + "method = monte_carlo\n");
  ExperimentConfig b = a;
  set_config_value(b, "", "seed", "1");
  CHECK(to_csv(run_experiment(a).tables[0]) != to_csv(run_experiment(b).tables[0]));
}

TEST_CASE("experiments: CSV dialect and metadata") {
  Table t{"x", {"a", "b"}, {{1.0, 0.1}, {-2.5e-300, INFINITY}}};
  CHECK(to_csv(t) == "a,b\n1,0.1\n-2.5e-300,inf\n");
  Table bad{"x", {"a", "b"}, {{1.0}}};
  CHECK(code_of([&] { to_csv(bad); }) == ErrorCode::kColumnMismatch);
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);

  const ExperimentResult r = run_experiment(parse_config(kDiffusion));
  const std::string meta = to_meta(r);
  CHECK(meta.rfind("# tool = starreg ", 0) == 0);
  CHECK(meta.find("# seed = 0\n") != std::string::npos);
  const std::string echo = meta.substr(meta.find("\n\n") + 2);
  CHECK(parse_config(echo) == parse_config(render_config(parse_config(kDiffusion), true)));
}

TEST_CASE("experiments: write_result creates one CSV per table and the metadata file") {
  const auto dir = scratch_dir("write");
  const ExperimentResult r = run_experiment(parse_config(
      "experiment = noise\n[register]\nn_total = 3\n[noise]\nsigma = 5\nfrequencies = 20, 40, 80\nt_max = 0.2\n"
      "trials = 100\n"));
  write_result(r, dir.string());
  CHECK(std::filesystem::exists(dir / "noise.csv"));
  CHECK(std::filesystem::exists(dir / "noise_fit.csv"));
  CHECK(std::filesystem::exists(dir / "noise.meta"));
  CHECK(read_file(dir / "noise.csv") == to_csv(r.tables[0]));
  std::filesystem::remove_all(dir);
}

TEST_CASE("plot: stick spectrum of a thermal register has one stick per line") {
  const auto dir = scratch_dir("sticks");
  const ExperimentResult r = run_experiment(
      parse_config("experiment = spectrum\n[register]\nn_total = 10\nj_ca = 11\n[spectrum]\nchannel = central\n"));
  write_result(r, dir.string());
  const std::string svg_path = emit_plot((dir / "spectrum.csv").string(), PlotKind::kSticks);
  CHECK(svg_path == (dir / "spectrum.svg").string());
  const std::string svg = read_file(svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_of(svg, "class=\"stick\"") == 10);
  std::filesystem::remove_all(dir);
}

TEST_CASE("plot: entropy heat map legend spans [0, 1] with one panel per k") {
  Table t{"chaos", {"theta", "phi", "k", "mean_entropy"}, {}};
  for (double k : {0.0, 10.0})
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) t.rows.push_back({i * 0.5, j * 1.0, k, k > 0 ? 0.3 : 0.0});
  const std::string svg = render_svg(t, PlotKind::kHeatmap);
  CHECK(count_of(svg, "class=\"cell\"") == 12);
  CHECK(svg.find("class=\"legend-max\"") != std::string::npos);
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex("class=\"legend-max\"[^>]*>([^<]*)<")));
  CHECK(m[1] == "1");
  REQUIRE(std::regex_search(svg, m, std::regex("class=\"legend-min\"[^>]*>([^<]*)<")));
  CHECK(m[1] == "0");
  CHECK(svg.find("k = 10") != std::string::npos);

  t.rows.pop_back();
  CHECK(code_of([&] { render_svg(t, PlotKind::kHeatmap); }) == ErrorCode::kColumnMismatch);
}

TEST_CASE("plot: empty or mismatched tables are rejected") {
  const Table empty{"x", {"a", "b"}, {}};
  for (PlotKind k : {PlotKind::kLine, PlotKind::kHeatmap, PlotKind::kSticks})
    CHECK(code_of([&] { render_svg(empty, k); }) == ErrorCode::kInvalidArgument);
  const Table one{"x", {"a"}, {{1.0}}};
  CHECK(code_of([&] { render_svg(one, PlotKind::kLine); }) == ErrorCode::kColumnMismatch);
  CHECK(code_of([&] { render_svg(one, PlotKind::kSticks); }) == ErrorCode::kColumnMismatch);
  CHECK(code_of([] { parse_plot_kind("pie"); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { read_csv("/nonexistent/file.csv"); }) == ErrorCode::kIoError);

  const auto dir = scratch_dir("csv");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.csv") << "a,b\n1,x\n";
  CHECK(code_of([&] { read_csv((dir / "bad.csv").string()); }) == ErrorCode::kParseError);
  std::ofstream(dir / "ragged.csv") << "a,b\n1\n";
  CHECK(code_of([&] { read_csv((dir / "ragged.csv").string()); }) != ErrorCode::kIoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("plot: line plot keeps every finite series point") {
  const Table t{"dtc", {"e", "peak", "decay"}, {{0.0, 500.0, INFINITY}, {0.1, 500.0, 40.0}, {0.2, 495.0, 20.0}}};
  const std::string svg = render_svg(t, PlotKind::kLine);
  CHECK(count_of(svg, "<polyline") == 2);
}
