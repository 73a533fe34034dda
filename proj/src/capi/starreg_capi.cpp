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

#include "starreg/starreg.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "core/dynamics.hpp"
#include "core/error.hpp"
#include "core/register.hpp"
#include "prep/state_prep.hpp"
#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/plot.hpp"

#ifndef STARREG_VERSION
#define STARREG_VERSION "unknown"
#endif

struct starreg_register {
  starreg::Register reg;
};
struct starreg_state {
  starreg::State state;
};
struct starreg_config {
  starreg::ExperimentConfig config;
};
struct starreg_result {
  starreg::ExperimentResult result;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return STARREG_OK;
  } catch (const starreg::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return STARREG_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STARREG_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return STARREG_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  starreg::require(p != nullptr, starreg::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

starreg::Backend backend_of(int b) {
  starreg::require(b == STARREG_BACKEND_SYMMETRIC || b == STARREG_BACKEND_DENSE, starreg::ErrorCode::kInvalidArgument,
                   "unknown backend code");
  return b == STARREG_BACKEND_DENSE ? starreg::Backend::kDense : starreg::Backend::kSymmetric;
}

const starreg::Table& table_of(const starreg_result* r, size_t t) {
  need(r, "result");
  starreg::require(t < r->result.tables.size(), starreg::ErrorCode::kIndexOutOfRange, "table index out of range");
  return r->result.tables[t];
}

}  // namespace

extern "C" {

const char* starreg_version(void) { return STARREG_VERSION; }

const char* starreg_last_error(void) { return g_last_error.c_str(); }

const char* starreg_status_name(int status) {
  if (status == STARREG_OK) return "Ok";
  if (status == STARREG_INTERNAL) return "Internal";
  if (status >= 1 && status <= 20) return starreg::error_code_name(static_cast<starreg::ErrorCode>(status)).data();
  return "Unknown";
}

void starreg_register_spec_default(starreg_register_spec* spec) {
  if (!spec) return;
  const starreg::RegisterSpec d;
  *spec = {d.n_total, d.gamma_c, d.gamma_a, d.j_ca, d.b0, d.temperature, 0.0, 0.0};
}

int starreg_register_create(const starreg_register_spec* spec, starreg_register** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    starreg::RegisterSpec s;
    s.n_total = spec->n_total;
    s.gamma_c = spec->gamma_c;
    s.gamma_a = spec->gamma_a;
    s.j_ca = spec->j_ca;
    s.b0 = spec->b0;
    s.temperature = spec->temperature;
    if (spec->t1_c > 0.0) s.t1_c = spec->t1_c;
    if (spec->t1_a > 0.0) s.t1_a = spec->t1_a;
    *out = new starreg_register{starreg::Register(s)};
  });
}

void starreg_register_destroy(starreg_register* reg) { delete reg; }

int starreg_register_purity(const starreg_register* reg, double* epsilon_c, double* epsilon_a) {
  return guarded([&] {
    need(reg, "register");
    if (epsilon_c) *epsilon_c = reg->reg.epsilon_c();
    if (epsilon_a) *epsilon_a = reg->reg.epsilon_a();
  });
}

int starreg_thermal_state(const starreg_register* reg, int backend, starreg_state** out) {
  return guarded([&] {
    need(reg, "register");
    need(out, "out");
    *out = new starreg_state{starreg::thermal_state(reg->reg, backend_of(backend))};
  });
}

int starreg_prepare_mssm(const starreg_state* in, starreg_state** out) {
  return guarded([&] {
    need(in, "state");
    need(out, "out");
    *out = new starreg_state{starreg::prepare_mssm(in->state)};
  });
}

void starreg_state_destroy(starreg_state* state) { delete state; }

int starreg_state_expectation(const starreg_state* state, int observable, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    starreg::require(observable >= STARREG_IX_CENTRAL && observable <= STARREG_IZ_ANCILLA,
                     starreg::ErrorCode::kInvalidArgument, "unknown observable code");
    const auto& l = state->state.layout_ptr();
    const auto axis = static_cast<starreg::Axis>(observable % 3);
    const starreg::Operator op = observable < 3 ? starreg::central_op(l, axis) : starreg::ancilla_op(l, axis);
    *out = starreg::expectation(state->state, op);
  });
}

int starreg_state_trace(const starreg_state* state, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = state->state.trace().real();
  });
}

int starreg_coherence_weight(const starreg_state* state, int q, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    static_cast<void>(starreg::coherence_filter(state->state, q));
    *out = starreg::coherence_decompose(state->state).weight(q);
  });
}

int starreg_config_parse(const char* text, starreg_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new starreg_config{starreg::parse_config(text)};
  });
}

int starreg_config_load(const char* path, starreg_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new starreg_config{starreg::load_config(path)};
  });
}

int starreg_config_set(starreg_config* config, const char* section, const char* key, const char* value) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(value, "value");
    starreg::set_config_value(config->config, section ? section : "", key, value);
  });
}

int starreg_config_render(const starreg_config* config, int resolved, char** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = dup_string(starreg::render_config(config->config, resolved != 0));
  });
}

int starreg_config_get_string(const starreg_config* config, const char* section, const char* key, char** out) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(out, "out");
    *out = dup_string(config->config.get_string(section ? section : "", key));
  });
}

void starreg_config_destroy(starreg_config* config) { delete config; }

void starreg_string_free(char* text) { std::free(text); }

int starreg_run(const starreg_config* config, starreg_result** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = new starreg_result{starreg::run_experiment(config->config)};
  });
}

int starreg_result_table_count(const starreg_result* result, size_t* out) {
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    *out = result->result.tables.size();
  });
}

int starreg_result_shape(const starreg_result* result, size_t table, size_t* rows, size_t* cols) {
  return guarded([&] {
    const starreg::Table& t = table_of(result, table);
    if (rows) *rows = t.rows.size();
    if (cols) *cols = t.columns.size();
  });
}

int starreg_result_table_name(const starreg_result* result, size_t table, const char** out) {
  return guarded([&] {
    need(out, "out");
    *out = table_of(result, table).name.c_str();
  });
}

int starreg_result_column(const starreg_result* result, size_t table, size_t col, const char** out) {
  return guarded([&] {
    need(out, "out");
    const starreg::Table& t = table_of(result, table);
    starreg::require(col < t.columns.size(), starreg::ErrorCode::kIndexOutOfRange, "column index out of range");
    *out = t.columns[col].c_str();
  });
}

int starreg_result_value(const starreg_result* result, size_t table, size_t row, size_t col, double* out) {
  return guarded([&] {
    need(out, "out");
    const starreg::Table& t = table_of(result, table);
    starreg::require(row < t.rows.size() && col < t.columns.size(), starreg::ErrorCode::kIndexOutOfRange,
                     "cell index out of range");
    *out = t.rows[row][col];
  });
}

int starreg_result_csv(const starreg_result* result, size_t table, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(starreg::to_csv(table_of(result, table)));
  });
}

int starreg_result_write(const starreg_result* result, const char* dir) {
  return guarded([&] {
    need(result, "result");
    need(dir, "dir");
    starreg::write_result(result->result, dir);
  });
}

void starreg_result_destroy(starreg_result* result) { delete result; }

int starreg_plot_csv(const char* csv_path, const char* kind, const char* svg_path) {
  return guarded([&] {
    need(csv_path, "csv_path");
    need(kind, "kind");
    starreg::emit_plot(csv_path, starreg::parse_plot_kind(kind), svg_path ? svg_path : "");
  });
}

}  // extern "C"
