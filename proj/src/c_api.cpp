#include "nnoma/nnoma.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "nnoma/experiment.hpp"
#include "nnoma/geometry.hpp"

struct nnoma_experiment {
  nnoma::ExperimentConfig config;
};

struct nnoma_result {
  nnoma::ExperimentConfig config;
  nnoma::OutageTable table;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_field;

nnoma_status status_of(nnoma::ErrorCode code) {
  switch (code) {
    case nnoma::ErrorCode::invalid_argument: return NNOMA_ERR_INVALID_ARGUMENT;
    case nnoma::ErrorCode::config_rejected: return NNOMA_ERR_CONFIG_REJECTED;
    case nnoma::ErrorCode::parse_error: return NNOMA_ERR_PARSE;
    case nnoma::ErrorCode::io_error: return NNOMA_ERR_IO;
    case nnoma::ErrorCode::unknown_preset: return NNOMA_ERR_UNKNOWN_PRESET;
  }
  return NNOMA_ERR_INTERNAL;
}

nnoma_status fail(nnoma_status status, std::string message, std::string field = {}) {
  g_last_error = std::move(message);
  g_last_field = std::move(field);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
nnoma_status guarded(F&& body) {
  try {
    g_last_error.clear();
    g_last_field.clear();
    body();
    return NNOMA_OK;
  } catch (const nnoma::Error& e) {
    return fail(status_of(e.code()), e.what(), e.field());
  } catch (const std::bad_alloc&) {
    return fail(NNOMA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NNOMA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NNOMA_ERR_INTERNAL, "unknown error");
  }
}

nnoma_status null_argument(const char* name) {
  return fail(NNOMA_ERR_INVALID_ARGUMENT, std::string(name) + ": must not be null", name);
}

}  // namespace

extern "C" {

const char* nnoma_version(void) { return "0.1.0"; }
const char* nnoma_last_error(void) { return g_last_error.c_str(); }
const char* nnoma_last_error_field(void) { return g_last_field.c_str(); }

nnoma_status nnoma_experiment_load(const char* path, nnoma_experiment** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new nnoma_experiment{nnoma::load_config(path)}; });
}

nnoma_status nnoma_experiment_parse(const char* text, nnoma_experiment** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new nnoma_experiment{nnoma::parse_config(text)}; });
}

nnoma_status nnoma_experiment_preset(const char* name, nnoma_experiment** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new nnoma_experiment{nnoma::figure_preset(name)}; });
}

void nnoma_experiment_free(nnoma_experiment* experiment) { delete experiment; }

nnoma_status nnoma_experiment_set_trials(nnoma_experiment* experiment, uint64_t trials) {
  if (!experiment) return null_argument("experiment");
  if (trials < 1) return fail(NNOMA_ERR_CONFIG_REJECTED, "trials: must be >= 1", "trials");
  experiment->config.trials = trials;
  return NNOMA_OK;
}

nnoma_status nnoma_experiment_set_seed(nnoma_experiment* experiment, uint64_t seed) {
  if (!experiment) return null_argument("experiment");
  experiment->config.seed = seed;
  return NNOMA_OK;
}

nnoma_status nnoma_experiment_set_threads(nnoma_experiment* experiment, unsigned threads) {
  if (!experiment) return null_argument("experiment");
  if (threads < 1) return fail(NNOMA_ERR_CONFIG_REJECTED, "threads: must be >= 1", "threads");
  experiment->config.threads = threads;
  return NNOMA_OK;
}

nnoma_status nnoma_experiment_describe(const nnoma_experiment* experiment, char* buffer, size_t size,
                                       size_t* needed) {
  if (!experiment) return null_argument("experiment");
  return guarded([&] {
    const std::string text = nnoma::format_config(experiment->config);
    if (needed) *needed = text.size() + 1;
    if (buffer && size > 0) {
      const size_t n = std::min(size - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

nnoma_status nnoma_experiment_run(const nnoma_experiment* experiment, nnoma_result** out) {
  if (!experiment) return null_argument("experiment");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto table = nnoma::run_outage_sweep(experiment->config);
    *out = new nnoma_result{experiment->config, std::move(table)};
  });
}

void nnoma_result_free(nnoma_result* result) { delete result; }

size_t nnoma_result_row_count(const nnoma_result* result) { return result ? result->table.size() : 0; }

nnoma_status nnoma_result_get_row(const nnoma_result* result, size_t index, nnoma_row* row) {
  if (!result) return null_argument("result");
  if (!row) return null_argument("row");
  if (index >= result->table.size())
    return fail(NNOMA_ERR_INVALID_ARGUMENT, "index: out of range", "index");
  const nnoma::OutageRow& r = result->table[index];
  row->power_dbm = r.power_dbm;
  row->scheme = nnoma::scheme_name(r.scheme).data();  // names are string literals
  row->user_index = r.user_index;
  row->p_out_mc = r.estimate.p_hat;
  row->ci_half_width = r.estimate.ci_half_width;
  row->has_analytic = r.estimate.analytic ? 1 : 0;
  row->p_out_analytic = r.estimate.analytic ? r.estimate.analytic->value : 0.0;
  row->sum_rate_bpcu = r.sum_rate_bpcu;
  row->regime_note = r.regime_note.c_str();
  return NNOMA_OK;
}

nnoma_status nnoma_result_write_csv(const nnoma_result* result, const char* path) {
  if (!result) return null_argument("result");
  if (!path) return null_argument("path");
  return guarded([&] { nnoma::emit_csv(result->table, path); });
}

nnoma_status nnoma_result_write_sum_rate_csv(const nnoma_result* result, const char* path) {
  if (!result) return null_argument("result");
  if (!path) return null_argument("path");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw nnoma::Error(nnoma::ErrorCode::io_error, "path", std::string("cannot write '") + path + "'");
    nnoma::write_sum_rate_csv(nnoma::summarize_sum_rates(result->table, result->config), out);
    out.flush();
    if (!out) throw nnoma::Error(nnoma::ErrorCode::io_error, "path", std::string("write to '") + path + "' failed");
  });
}

nnoma_status nnoma_lambda_of_k(double k, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = nnoma::lambda_of_k(k); });
}

nnoma_status nnoma_intersection_area(double side_length_m, double big_radius_m, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = nnoma::intersection_area(side_length_m, big_radius_m); });
}

}  // extern "C"
