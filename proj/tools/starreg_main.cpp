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

// Command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starreg/starreg.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSimulation = 2;

int report(int status, const std::string& context, int exit_code) {
  std::fprintf(stderr, "starreg: %s: %s: %s\n", context.c_str(), starreg_status_name(status), starreg_last_error());
  return exit_code;
}

struct RunArgs {
  std::string config;
  std::string output;
  std::string seed;
  std::string backend;
  std::string threads;
  std::string plot;
};

struct PlotArgs {
  std::string csv;
  std::string kind;
  std::string output;
};

int do_run(const RunArgs& a) {
  starreg_config* cfg = nullptr;
  int st = starreg_config_load(a.config.c_str(), &cfg);
  if (st != STARREG_OK) return report(st, a.config, kExitConfig);

  const std::pair<const char*, const std::string*> overrides[] = {
      {"output", &a.output}, {"seed", &a.seed}, {"backend", &a.backend}, {"threads", &a.threads}};
  for (const auto& [key, value] : overrides) {
    if (value->empty()) continue;
    st = starreg_config_set(cfg, "", key, value->c_str());
    if (st != STARREG_OK) {
      starreg_config_destroy(cfg);
      return report(st, std::string("--") + key, kExitConfig);
    }
  }

  char* out_dir = nullptr;
  st = starreg_config_get_string(cfg, "", "output", &out_dir);
  if (st != STARREG_OK) {
    starreg_config_destroy(cfg);
    return report(st, "output", kExitConfig);
  }
  const std::string dir = out_dir;
  starreg_string_free(out_dir);
  char* experiment = nullptr;
  starreg_config_get_string(cfg, "", "experiment", &experiment);
  const std::string name = experiment ? experiment : "experiment";
  starreg_string_free(experiment);

  starreg_result* result = nullptr;
  st = starreg_run(cfg, &result);
  starreg_config_destroy(cfg);
  if (st != STARREG_OK) return report(st, "experiment " + name, kExitSimulation);

  st = starreg_result_write(result, dir.c_str());
  size_t n_tables = 0;
  starreg_result_table_count(result, &n_tables);
  std::vector<std::string> tables;
  for (size_t t = 0; t < n_tables; ++t) {
    const char* tname = nullptr;
    starreg_result_table_name(result, t, &tname);
    tables.emplace_back(tname);
  }
  starreg_result_destroy(result);
  if (st != STARREG_OK) return report(st, "writing " + dir, kExitSimulation);

  for (const auto& t : tables) {
    const auto csv = (std::filesystem::path(dir) / (t + ".csv")).string();
    std::printf("%s\n", csv.c_str());
    if (!a.plot.empty() && t == name) {
      st = starreg_plot_csv(csv.c_str(), a.plot.c_str(), nullptr);
      if (st != STARREG_OK) return report(st, "plot " + csv, kExitSimulation);
    }
  }
  return 0;
}

int do_plot(const PlotArgs& a) {
  const int st = starreg_plot_csv(a.csv.c_str(), a.kind.c_str(), a.output.empty() ? nullptr : a.output.c_str());
  if (st == STARREG_OK) return 0;
  return report(st, a.csv, st == STARREG_INVALID_ARGUMENT && a.kind != "line" && a.kind != "heatmap" &&
                                   a.kind != "sticks"
                               ? kExitConfig
                               : kExitSimulation);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star-topology spin register simulator"};
  app.set_version_flag("--version", std::string(starreg_version()));
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_args.config, "Config file")->required();
  run->add_option("--output", run_args.output, "Output directory (overrides the config)");
  run->add_option("--seed", run_args.seed, "Master seed, unsigned 64-bit (overrides the config)");
  run->add_option("--backend", run_args.backend, "auto, symmetric or dense (overrides the config)");
  run->add_option("--threads", run_args.threads, "Worker threads for sweeps (results do not depend on it)");
  run->add_option("--plot", run_args.plot, "Also render the main table as line, heatmap or sticks");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render a result CSV as a standalone SVG");
  plot->add_option("csv", plot_args.csv, "CSV file")->required();
  plot->add_option("--kind", plot_args.kind, "line, heatmap or sticks")->required();
  plot->add_option("--output", plot_args.output, "SVG path (default: next to the CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (*run) return do_run(run_args);
  return do_plot(plot_args);
}
