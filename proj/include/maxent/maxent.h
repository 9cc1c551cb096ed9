/*
 * Copyright 2026 the maxent-nn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MAXENT_MAXENT_H
#define MAXENT_MAXENT_H

/*
 * C interface to the maximum-entropy nearest-neighbour predictor, the
 * laminate and signal feature pipeline, and the evaluation harness.
 *
 * Every fallible call returns a maxent_status. On failure the calling
 * thread's last error message (maxent_last_error) describes the problem.
 * Handles are opaque; each *_create / producing call is paired with a
 * *_destroy, and destroy functions accept NULL. Strings returned by the
 * library stay valid until the owning handle is destroyed, or for
 * thread-local messages, until the next call on the same thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MAXENT_BUILDING_LIBRARY)
#define MAXENT_API __declspec(dllexport)
#else
#define MAXENT_API __declspec(dllimport)
#endif
#else
#define MAXENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum maxent_status {
  MAXENT_OK = 0,
  MAXENT_ERR_INVALID_INPUT = 1,
  MAXENT_ERR_PARAMETER = 2,
  MAXENT_ERR_DEGENERATE_NEIGHBORHOOD = 3,
  MAXENT_ERR_NUMERICAL_FAILURE = 4,
  MAXENT_ERR_INVALID_MATERIAL = 5,
  MAXENT_ERR_DEGENERATE_BASELINE = 6,
  MAXENT_ERR_INGESTION = 7,
  MAXENT_ERR_UNDEFINED_METRIC = 8,
  MAXENT_ERR_PARSE = 9,
  MAXENT_ERR_IO = 10,
  MAXENT_ERR_NULL_ARGUMENT = 11,
  MAXENT_ERR_OUT_OF_RANGE = 12,
  MAXENT_ERR_INTERNAL = 13
} maxent_status;

MAXENT_API const char* maxent_version(void);
MAXENT_API const char* maxent_status_name(maxent_status status);

/* Message of the most recent failure on this thread, "" if none. */
MAXENT_API const char* maxent_last_error(void);
/* For MAXENT_ERR_PARSE: zero-based offset of the offending character. */
MAXENT_API size_t maxent_last_error_position(void);

/* ---- Predictor parameters ---------------------------------------------- */

typedef struct maxent_params {
  double threshold_filter;
  double threshold_entropy;
  double convergence_tolerance;
  size_t it_convergence;
  double local_min_tolerance;
  size_t it_local_min;
  double q1_initial_error;
  /* Prefilter bandwidth growth per outer round; <= 0 selects a quarter of
   * the nearest-neighbour distance. */
  double q2_hfilter_increment;
  size_t sweep_points;
  size_t max_minconvex_rounds;
} maxent_params;

MAXENT_API void maxent_params_default(maxent_params* params);
MAXENT_API maxent_status maxent_params_validate(const maxent_params* params);

/* ---- Datasets ------------------------------------------------------------ */

typedef struct maxent_dataset maxent_dataset;

MAXENT_API maxent_status maxent_dataset_create_regression(size_t dim, size_t label_width,
                                                          maxent_dataset** out);
MAXENT_API maxent_status maxent_dataset_create_classification(size_t dim, maxent_dataset** out);
/* `labels` holds label_width values. */
MAXENT_API maxent_status maxent_dataset_add_regression(maxent_dataset* dataset,
                                                       const double* point,
                                                       const double* labels);
MAXENT_API maxent_status maxent_dataset_add_class(maxent_dataset* dataset, const double* point,
                                                  int64_t class_id);
MAXENT_API size_t maxent_dataset_rows(const maxent_dataset* dataset);
MAXENT_API size_t maxent_dataset_dim(const maxent_dataset* dataset);
MAXENT_API void maxent_dataset_destroy(maxent_dataset* dataset);

/* ---- Predictions --------------------------------------------------------- */

typedef enum maxent_exit_reason {
  MAXENT_EXIT_CONVERGED = 0,
  MAXENT_EXIT_LOCAL_MINIMUM = 1,
  MAXENT_EXIT_ROUND_CAP = 2
} maxent_exit_reason;

typedef struct maxent_diagnostics {
  maxent_exit_reason exit_reason;
  double h_star;
  size_t subset_size;
  size_t iterations;
  double residual_error;
  double weight_sum_gap;
  size_t rounds;
  int duplicate;
} maxent_diagnostics;

typedef struct maxent_predictions maxent_predictions;

/* `queries` is row-major, count x dim. Per-query failures do not fail the
 * call; inspect maxent_prediction_status. parallelism 0 means 1. */
MAXENT_API maxent_status maxent_predict_batch(const maxent_dataset* dataset,
                                              const double* queries, size_t count,
                                              const maxent_params* params,
                                              unsigned parallelism, maxent_predictions** out);
/* Inverse-distance weighted k-nearest-neighbour baseline. */
MAXENT_API maxent_status maxent_predict_wknn(const maxent_dataset* dataset,
                                             const double* queries, size_t count, size_t k,
                                             unsigned parallelism, maxent_predictions** out);

MAXENT_API size_t maxent_predictions_count(const maxent_predictions* predictions);
MAXENT_API maxent_status maxent_prediction_status(const maxent_predictions* predictions,
                                                  size_t index);
MAXENT_API const char* maxent_prediction_error(const maxent_predictions* predictions,
                                               size_t index);
/* Copies up to `capacity` label values; *written receives the label width. */
MAXENT_API maxent_status maxent_prediction_value(const maxent_predictions* predictions,
                                                 size_t index, double* values,
                                                 size_t capacity, size_t* written);
MAXENT_API maxent_status maxent_prediction_class(const maxent_predictions* predictions,
                                                 size_t index, int64_t* class_id);
/* Fails with MAXENT_ERR_INVALID_INPUT for baseline predictions. */
MAXENT_API maxent_status maxent_prediction_diagnostics(const maxent_predictions* predictions,
                                                       size_t index, maxent_diagnostics* out);
MAXENT_API const char* maxent_prediction_diagnostics_json(
    const maxent_predictions* predictions, size_t index);
/* Neighbour rows used for the prediction and, for maximum-entropy
 * regression, their raw solver weights (NULL otherwise). */
MAXENT_API maxent_status maxent_prediction_neighbors(const maxent_predictions* predictions,
                                                     size_t index, const size_t** rows,
                                                     const double** weights, size_t* count);
/* CSV with header
 *   row,D_pred,exit_reason,h_star,subset_size,iterations,residual,
 *   weight_sum_gap,rounds,duplicate,error
 * one line per query in input order. Only the first label is written. */
MAXENT_API maxent_status maxent_predictions_write_csv(const maxent_predictions* predictions,
                                                      const char* path);
MAXENT_API void maxent_predictions_destroy(maxent_predictions* predictions);

/* ---- Laminates ----------------------------------------------------------- */

/* Moduli in GPa, thickness in mm. */
typedef struct maxent_ply {
  double e1;
  double e2;
  double nu12;
  double g12;
  double thickness;
  double nu23;
  double g23;
} maxent_ply;

typedef struct maxent_abd {
  /* Row-major 3x3 blocks. */
  double a[9];
  double b[9];
  double d[9];
  /* A11 A12 A16 A22 A26 A66, then the same terms of B and D. */
  double features[18];
  size_t plies;
} maxent_abd;

/* T700G ply used by the reference coupons. */
MAXENT_API void maxent_ply_default(maxent_ply* ply);
/* `ply` may be NULL for the default ply. */
MAXENT_API maxent_status maxent_clt(const char* notation, const maxent_ply* ply,
                                    maxent_abd* out);
MAXENT_API const char* maxent_stiffness_feature_name(size_t index);

/* ---- Feature tables ------------------------------------------------------ */

typedef struct maxent_table maxent_table;

typedef struct maxent_ingest_options {
  /* Skip malformed records instead of failing. */
  int lenient;
  /* Optional JSON map of coupon id to cycles at failure; may be NULL. */
  const char* coupons_path;
} maxent_ingest_options;

typedef struct maxent_ingest_report {
  size_t lines;
  size_t rows;
  size_t masked_cells;
  size_t warnings;
} maxent_ingest_report;

MAXENT_API size_t maxent_feature_width(void);
MAXENT_API const char* maxent_feature_name(size_t column);

/* Reads one JSON measurement record per line. `report` may be NULL. */
MAXENT_API maxent_status maxent_table_from_records(const char* path,
                                                   const maxent_ingest_options* options,
                                                   maxent_table** out,
                                                   maxent_ingest_report* report);
MAXENT_API size_t maxent_table_warning_count(const maxent_table* table);
MAXENT_API const char* maxent_table_warning(const maxent_table* table, size_t index);

MAXENT_API maxent_status maxent_table_read_csv(const char* path, maxent_table** out);
MAXENT_API maxent_status maxent_table_write_csv(const maxent_table* table, const char* path);
MAXENT_API size_t maxent_table_rows(const maxent_table* table);
MAXENT_API int maxent_table_has_targets(const maxent_table* table);
MAXENT_API size_t maxent_table_masked_cells(const maxent_table* table);
/* Copies 530 feature values (NaN where masked); `target` may be NULL. */
MAXENT_API maxent_status maxent_table_row(const maxent_table* table, size_t index,
                                          double* values, double* target);
/* Seeded split stratified by layup when `stratified` is nonzero. */
MAXENT_API maxent_status maxent_table_split(const maxent_table* table, double test_fraction,
                                            uint64_t seed, int stratified,
                                            maxent_table** train, maxent_table** test);
MAXENT_API void maxent_table_destroy(maxent_table* table);

/* ---- Online store -------------------------------------------------------- */

typedef enum maxent_scaler { MAXENT_SCALER_STANDARD = 0, MAXENT_SCALER_MINMAX = 1 } maxent_scaler;

typedef struct maxent_store maxent_store;

/* Copies `training`, fits the imputer and scaler on it. */
MAXENT_API maxent_status maxent_store_create(const maxent_table* training, maxent_scaler scaler,
                                             maxent_store** out);
/* Refit the scaler after every append instead of reusing the first fit. */
MAXENT_API maxent_status maxent_store_set_refresh(maxent_store* store, int refresh);
/* values: 530 cells, NaN for missing. */
MAXENT_API maxent_status maxent_store_append_row(maxent_store* store, const double* values,
                                                 double target);
MAXENT_API maxent_status maxent_store_append_table(maxent_store* store,
                                                   const maxent_table* rows);
MAXENT_API size_t maxent_store_rows(const maxent_store* store);
/* Number of scaler fits performed, the initial one included. */
MAXENT_API size_t maxent_store_refit_count(const maxent_store* store);
MAXENT_API maxent_status maxent_store_predict(const maxent_store* store,
                                              const maxent_table* queries,
                                              const maxent_params* params,
                                              unsigned parallelism, maxent_predictions** out);
MAXENT_API maxent_status maxent_store_predict_wknn(const maxent_store* store,
                                                   const maxent_table* queries, size_t k,
                                                   unsigned parallelism,
                                                   maxent_predictions** out);
/* Raw (unscaled) copy of the stored rows. */
MAXENT_API maxent_status maxent_store_table(const maxent_store* store, maxent_table** out);
MAXENT_API void maxent_store_destroy(maxent_store* store);

/* ---- Evaluation ---------------------------------------------------------- */

typedef struct maxent_metrics {
  double r2;
  double mse;
  size_t n;
} maxent_metrics;

MAXENT_API maxent_status maxent_metrics_compute(const double* y_true, const double* y_pred,
                                                size_t n, maxent_metrics* out);

typedef enum maxent_toy_kind { MAXENT_TOY_REGRESSION = 0, MAXENT_TOY_CLASSIFICATION = 1 } maxent_toy_kind;
typedef enum maxent_predictor { MAXENT_PREDICTOR_MAXENT = 0, MAXENT_PREDICTOR_WKNN = 1 } maxent_predictor;

typedef struct maxent_toy_spec {
  maxent_toy_kind kind;
  size_t train_count;
  size_t eval_count;
  uint64_t seed;
} maxent_toy_spec;

typedef struct maxent_toy_report maxent_toy_report;

MAXENT_API void maxent_toy_spec_default(maxent_toy_spec* spec, maxent_toy_kind kind);
/* `params` is used by the maximum-entropy predictor (NULL for defaults),
 * `k` by the baseline. */
MAXENT_API maxent_status maxent_toy_run(const maxent_toy_spec* spec, maxent_predictor predictor,
                                        const maxent_params* params, size_t k,
                                        unsigned parallelism, maxent_toy_report** out);
/* x1,x2,y1_true,y2_true,y1_pred,y2_pred,n_neighbors,h_star,exit_reason */
MAXENT_API const char* maxent_toy_report_csv(const maxent_toy_report* report);
MAXENT_API const char* maxent_toy_report_metrics_json(const maxent_toy_report* report);
MAXENT_API void maxent_toy_report_destroy(maxent_toy_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MAXENT_MAXENT_H */
