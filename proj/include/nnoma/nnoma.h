#ifndef NNOMA_NNOMA_H
#define NNOMA_NNOMA_H

/* C interface of the nnoma simulator. Every call returns a status code;
   on failure nnoma_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NNOMA_API __declspec(dllexport)
#else
#define NNOMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nnoma_status {
  NNOMA_OK = 0,
  NNOMA_ERR_INVALID_ARGUMENT = 1,
  NNOMA_ERR_CONFIG_REJECTED = 2,
  NNOMA_ERR_PARSE = 3,
  NNOMA_ERR_IO = 4,
  NNOMA_ERR_UNKNOWN_PRESET = 5,
  NNOMA_ERR_INTERNAL = 6
} nnoma_status;

typedef struct nnoma_experiment nnoma_experiment;
typedef struct nnoma_result nnoma_result;

/* One row of the outage table. `has_analytic` is 0 when no closed form applies.
   `scheme` and `regime_note` stay valid until the owning result is freed. */
typedef struct nnoma_row {
  double power_dbm;
  const char* scheme;
  int user_index;
  double p_out_mc;
  double ci_half_width;
  int has_analytic;
  double p_out_analytic;
  double sum_rate_bpcu;
  const char* regime_note;
} nnoma_row;

NNOMA_API const char* nnoma_version(void);
NNOMA_API const char* nnoma_last_error(void);
/* Name of the config field the last error refers to, or "" when none. */
NNOMA_API const char* nnoma_last_error_field(void);

NNOMA_API nnoma_status nnoma_experiment_load(const char* path, nnoma_experiment** out);
NNOMA_API nnoma_status nnoma_experiment_parse(const char* text, nnoma_experiment** out);
NNOMA_API nnoma_status nnoma_experiment_preset(const char* name, nnoma_experiment** out);
NNOMA_API void nnoma_experiment_free(nnoma_experiment* experiment);

NNOMA_API nnoma_status nnoma_experiment_set_trials(nnoma_experiment* experiment, uint64_t trials);
NNOMA_API nnoma_status nnoma_experiment_set_seed(nnoma_experiment* experiment, uint64_t seed);
NNOMA_API nnoma_status nnoma_experiment_set_threads(nnoma_experiment* experiment, unsigned threads);
/* Writes the config in file syntax into `buffer`; `*needed` receives the size including the terminator. */
NNOMA_API nnoma_status nnoma_experiment_describe(const nnoma_experiment* experiment, char* buffer, size_t size,
                                                 size_t* needed);

NNOMA_API nnoma_status nnoma_experiment_run(const nnoma_experiment* experiment, nnoma_result** out);
NNOMA_API void nnoma_result_free(nnoma_result* result);

NNOMA_API size_t nnoma_result_row_count(const nnoma_result* result);
NNOMA_API nnoma_status nnoma_result_get_row(const nnoma_result* result, size_t index, nnoma_row* row);
NNOMA_API nnoma_status nnoma_result_write_csv(const nnoma_result* result, const char* path);
NNOMA_API nnoma_status nnoma_result_write_sum_rate_csv(const nnoma_result* result, const char* path);

/* Geometry helpers. */
NNOMA_API nnoma_status nnoma_lambda_of_k(double k, double* out);
NNOMA_API nnoma_status nnoma_intersection_area(double side_length_m, double big_radius_m, double* out);

#ifdef __cplusplus
}
#endif

#endif
