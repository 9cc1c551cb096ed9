// Copyright 2026 the maxent-nn authors
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

#include "maxent/maxent.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "core/dataset.hpp"
#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/maxent.hpp"
#include "core/text.hpp"
#include "eval/metrics.hpp"
#include "eval/toy.hpp"
#include "eval/wknn.hpp"
#include "laminate/laminate.hpp"
#include "laminate/layup_notation.hpp"
#include "pipeline/feature_table.hpp"
#include "pipeline/online_store.hpp"
#include "pipeline/split.hpp"

using namespace maxent;

struct maxent_dataset {
  core::Dataset data;
};

struct maxent_predictions {
  struct Entry {
    maxent_status status = MAXENT_OK;
    std::string error;
    std::vector<double> value;
    std::int64_t class_id = 0;
    bool has_diagnostics = false;
    core::Diagnostics diagnostics;
    std::string diagnostics_json;
    std::vector<std::size_t> neighbors;
  };
  std::vector<Entry> entries;
};

struct maxent_table {
  pipeline::FeatureTable table;
  std::vector<std::string> warnings;
};

struct maxent_store {
  std::unique_ptr<pipeline::OnlineStore> store;
};

struct maxent_toy_report {
  std::string csv;
  std::string metrics;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_position = 0;

maxent_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return MAXENT_ERR_INVALID_INPUT;
    case ErrorCode::parameter: return MAXENT_ERR_PARAMETER;
    case ErrorCode::degenerate_neighborhood: return MAXENT_ERR_DEGENERATE_NEIGHBORHOOD;
    case ErrorCode::numerical_failure: return MAXENT_ERR_NUMERICAL_FAILURE;
    case ErrorCode::invalid_material: return MAXENT_ERR_INVALID_MATERIAL;
    case ErrorCode::degenerate_baseline: return MAXENT_ERR_DEGENERATE_BASELINE;
    case ErrorCode::ingestion: return MAXENT_ERR_INGESTION;
    case ErrorCode::undefined_metric: return MAXENT_ERR_UNDEFINED_METRIC;
    case ErrorCode::parse: return MAXENT_ERR_PARSE;
    case ErrorCode::io: return MAXENT_ERR_IO;
  }
  return MAXENT_ERR_INTERNAL;
}

maxent_status fail_with(maxent_status status, std::string message) {
  last_error = std::move(message);
  last_position = 0;
  return status;
}

template <class F>
maxent_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return MAXENT_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    last_position = e.position();
    return MAXENT_ERR_PARSE;
  } catch (const Error& e) {
    return fail_with(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(MAXENT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(MAXENT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(MAXENT_ERR_INTERNAL, "unknown failure");
  }
}

#define MAXENT_REQUIRE(ptr)                                                 \
  do {                                                                      \
    if ((ptr) == nullptr) {                                                 \
      return fail_with(MAXENT_ERR_NULL_ARGUMENT, #ptr " must not be NULL"); \
    }                                                                       \
  } while (0)

core::MaxEntParams from_c(const maxent_params* p) {
  core::MaxEntParams out;
  if (p == nullptr) return out;
  out.threshold_filter = p->threshold_filter;
  out.threshold_entropy = p->threshold_entropy;
  out.convergence_tolerance = p->convergence_tolerance;
  out.it_convergence = p->it_convergence;
  out.local_min_tolerance = p->local_min_tolerance;
  out.it_local_min = p->it_local_min;
  out.q1_initial_error = p->q1_initial_error;
  if (p->q2_hfilter_increment > 0.0) out.q2_hfilter_increment = p->q2_hfilter_increment;
  out.sweep_points = p->sweep_points;
  out.max_minconvex_rounds = p->max_minconvex_rounds;
  return out;
}

maxent_predictions::Entry from_result(const core::BatchResult& result) {
  maxent_predictions::Entry e;
  if (const auto* err = std::get_if<Error>(&result)) {
    e.status = to_status(err->code());
    e.error = err->what();
    return e;
  }
  const auto& p = std::get<core::Prediction>(result);
  e.value = p.value;
  e.class_id = p.class_id;
  if (p.task == core::Task::classification) e.value = {static_cast<double>(p.class_id)};
  e.has_diagnostics = true;
  e.diagnostics = p.diagnostics;
  e.diagnostics_json = core::diagnostics_json(p.diagnostics);
  e.neighbors = p.diagnostics.subset_indices;
  return e;
}

maxent_predictions::Entry from_result(const eval::WknnResult& result) {
  maxent_predictions::Entry e;
  if (const auto* err = std::get_if<Error>(&result)) {
    e.status = to_status(err->code());
    e.error = err->what();
    return e;
  }
  const auto& p = std::get<eval::WknnPrediction>(result);
  e.value = p.value;
  e.class_id = p.class_id;
  e.neighbors = p.neighbors;
  return e;
}

template <class Results>
maxent_predictions* wrap(const Results& results) {
  auto out = std::make_unique<maxent_predictions>();
  out->entries.reserve(results.size());
  for (const auto& r : results) out->entries.push_back(from_result(r));
  return out.release();
}

const maxent_predictions::Entry* entry(const maxent_predictions* p, std::size_t index) {
  if (p == nullptr || index >= p->entries.size()) return nullptr;
  return &p->entries[index];
}

unsigned workers(unsigned parallelism) { return parallelism == 0 ? 1 : parallelism; }

pipeline::FeatureRow row_from_c(const double* values, double target) {
  pipeline::FeatureRow row;
  for (std::size_t c = 0; c < pipeline::feature_width; ++c) {
    if (std::isnan(values[c])) {
      row.values[c] = 0.0;
      row.missing[c] = 1;
    } else {
      row.values[c] = values[c];
    }
  }
  row.target = target;
  return row;
}

std::ifstream open_in(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, std::string("cannot open ") + path);
  return in;
}

void write_file(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, std::string("cannot write ") + path);
  out << text;
  if (!out) fail(ErrorCode::io, std::string("write failed for ") + path);
}

}  // namespace

extern "C" {

const char* maxent_version(void) { return MAXENT_VERSION_STRING; }

const char* maxent_status_name(maxent_status status) {
  switch (status) {
    case MAXENT_OK: return "ok";
    case MAXENT_ERR_INVALID_INPUT: return "invalid_input";
    case MAXENT_ERR_PARAMETER: return "parameter";
    case MAXENT_ERR_DEGENERATE_NEIGHBORHOOD: return "degenerate_neighborhood";
    case MAXENT_ERR_NUMERICAL_FAILURE: return "numerical_failure";
    case MAXENT_ERR_INVALID_MATERIAL: return "invalid_material";
    case MAXENT_ERR_DEGENERATE_BASELINE: return "degenerate_baseline";
    case MAXENT_ERR_INGESTION: return "ingestion";
    case MAXENT_ERR_UNDEFINED_METRIC: return "undefined_metric";
    case MAXENT_ERR_PARSE: return "parse";
    case MAXENT_ERR_IO: return "io";
    case MAXENT_ERR_NULL_ARGUMENT: return "null_argument";
    case MAXENT_ERR_OUT_OF_RANGE: return "out_of_range";
    case MAXENT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* maxent_last_error(void) { return last_error.c_str(); }
size_t maxent_last_error_position(void) { return last_position; }

void maxent_params_default(maxent_params* params) {
  if (params == nullptr) return;
  const core::MaxEntParams d;
  params->threshold_filter = d.threshold_filter;
  params->threshold_entropy = d.threshold_entropy;
  params->convergence_tolerance = d.convergence_tolerance;
  params->it_convergence = d.it_convergence;
  params->local_min_tolerance = d.local_min_tolerance;
  params->it_local_min = d.it_local_min;
  params->q1_initial_error = d.q1_initial_error;
  params->q2_hfilter_increment = 0.0;
  params->sweep_points = d.sweep_points;
  params->max_minconvex_rounds = d.max_minconvex_rounds;
}

maxent_status maxent_params_validate(const maxent_params* params) {
  MAXENT_REQUIRE(params);
  return guarded([&] { from_c(params).validate(); });
}

maxent_status maxent_dataset_create_regression(size_t dim, size_t label_width,
                                               maxent_dataset** out) {
  MAXENT_REQUIRE(out);
  return guarded([&] {
    *out = new maxent_dataset{core::Dataset::regression(dim, label_width)};
  });
}

maxent_status maxent_dataset_create_classification(size_t dim, maxent_dataset** out) {
  MAXENT_REQUIRE(out);
  return guarded([&] { *out = new maxent_dataset{core::Dataset::classification(dim)}; });
}

maxent_status maxent_dataset_add_regression(maxent_dataset* dataset, const double* point,
                                            const double* labels) {
  MAXENT_REQUIRE(dataset);
  MAXENT_REQUIRE(point);
  MAXENT_REQUIRE(labels);
  return guarded([&] {
    dataset->data.add(std::span<const double>(point, dataset->data.dim()),
                      std::span<const double>(labels, dataset->data.label_width()));
  });
}

maxent_status maxent_dataset_add_class(maxent_dataset* dataset, const double* point,
                                       int64_t class_id) {
  MAXENT_REQUIRE(dataset);
  MAXENT_REQUIRE(point);
  return guarded([&] {
    dataset->data.add(std::span<const double>(point, dataset->data.dim()), class_id);
  });
}

size_t maxent_dataset_rows(const maxent_dataset* dataset) {
  return dataset ? dataset->data.rows() : 0;
}

size_t maxent_dataset_dim(const maxent_dataset* dataset) {
  return dataset ? dataset->data.dim() : 0;
}

void maxent_dataset_destroy(maxent_dataset* dataset) { delete dataset; }

maxent_status maxent_predict_batch(const maxent_dataset* dataset, const double* queries,
                                   size_t count, const maxent_params* params,
                                   unsigned parallelism, maxent_predictions** out) {
  MAXENT_REQUIRE(dataset);
  MAXENT_REQUIRE(out);
  if (count > 0 && queries == nullptr) return fail_with(MAXENT_ERR_NULL_ARGUMENT, "queries must not be NULL");
  return guarded([&] {
    const auto p = from_c(params);
    p.validate();
    const auto results = core::predict_batch(
        dataset->data, std::span<const double>(queries, count * dataset->data.dim()), p,
        workers(parallelism));
    *out = wrap(results);
  });
}

maxent_status maxent_predict_wknn(const maxent_dataset* dataset, const double* queries,
                                  size_t count, size_t k, unsigned parallelism,
                                  maxent_predictions** out) {
  MAXENT_REQUIRE(dataset);
  MAXENT_REQUIRE(out);
  if (count > 0 && queries == nullptr) return fail_with(MAXENT_ERR_NULL_ARGUMENT, "queries must not be NULL");
  return guarded([&] {
    if (k == 0 || k > dataset->data.rows()) {
      fail(ErrorCode::parameter, "k must lie in 1.." + std::to_string(dataset->data.rows()));
    }
    const auto results = eval::wknn_batch(
        dataset->data, std::span<const double>(queries, count * dataset->data.dim()), k,
        workers(parallelism));
    *out = wrap(results);
  });
}

size_t maxent_predictions_count(const maxent_predictions* predictions) {
  return predictions ? predictions->entries.size() : 0;
}

maxent_status maxent_prediction_status(const maxent_predictions* predictions, size_t index) {
  const auto* e = entry(predictions, index);
  if (e == nullptr) return MAXENT_ERR_OUT_OF_RANGE;
  return e->status;
}

const char* maxent_prediction_error(const maxent_predictions* predictions, size_t index) {
  const auto* e = entry(predictions, index);
  return e ? e->error.c_str() : "";
}

maxent_status maxent_prediction_value(const maxent_predictions* predictions, size_t index,
                                      double* values, size_t capacity, size_t* written) {
  const auto* e = entry(predictions, index);
  if (e == nullptr) return fail_with(MAXENT_ERR_OUT_OF_RANGE, "prediction index out of range");
  if (e->status != MAXENT_OK) return fail_with(e->status, e->error);
  if (written) *written = e->value.size();
  if (capacity > 0 && values == nullptr) return fail_with(MAXENT_ERR_NULL_ARGUMENT, "values must not be NULL");
  for (std::size_t i = 0; i < capacity && i < e->value.size(); ++i) values[i] = e->value[i];
  return MAXENT_OK;
}

maxent_status maxent_prediction_class(const maxent_predictions* predictions, size_t index,
                                      int64_t* class_id) {
  MAXENT_REQUIRE(class_id);
  const auto* e = entry(predictions, index);
  if (e == nullptr) return fail_with(MAXENT_ERR_OUT_OF_RANGE, "prediction index out of range");
  if (e->status != MAXENT_OK) return fail_with(e->status, e->error);
  *class_id = e->class_id;
  return MAXENT_OK;
}

maxent_status maxent_prediction_diagnostics(const maxent_predictions* predictions, size_t index,
                                            maxent_diagnostics* out) {
  MAXENT_REQUIRE(out);
  const auto* e = entry(predictions, index);
  if (e == nullptr) return fail_with(MAXENT_ERR_OUT_OF_RANGE, "prediction index out of range");
  if (e->status != MAXENT_OK) return fail_with(e->status, e->error);
  if (!e->has_diagnostics) {
    return fail_with(MAXENT_ERR_INVALID_INPUT, "baseline predictions carry no diagnostics");
  }
  const auto& d = e->diagnostics;
  out->exit_reason = static_cast<maxent_exit_reason>(d.exit_reason);
  out->h_star = d.h_star;
  out->subset_size = d.subset_size;
  out->iterations = d.iterations;
  out->residual_error = d.residual_error;
  out->weight_sum_gap = d.weight_sum_gap;
  out->rounds = d.rounds;
  out->duplicate = d.duplicate ? 1 : 0;
  return MAXENT_OK;
}

const char* maxent_prediction_diagnostics_json(const maxent_predictions* predictions,
                                               size_t index) {
  const auto* e = entry(predictions, index);
  return e ? e->diagnostics_json.c_str() : "";
}

maxent_status maxent_prediction_neighbors(const maxent_predictions* predictions, size_t index,
                                          const size_t** rows, const double** weights,
                                          size_t* count) {
  MAXENT_REQUIRE(count);
  const auto* e = entry(predictions, index);
  if (e == nullptr) return fail_with(MAXENT_ERR_OUT_OF_RANGE, "prediction index out of range");
  if (e->status != MAXENT_OK) return fail_with(e->status, e->error);
  *count = e->neighbors.size();
  if (rows) *rows = e->neighbors.data();
  if (weights) {
    *weights = e->diagnostics.weights.size() == e->neighbors.size() && !e->neighbors.empty()
                   ? e->diagnostics.weights.data()
                   : nullptr;
  }
  return MAXENT_OK;
}

maxent_status maxent_predictions_write_csv(const maxent_predictions* predictions,
                                           const char* path) {
  MAXENT_REQUIRE(predictions);
  MAXENT_REQUIRE(path);
  return guarded([&] {
    std::ostringstream out;
    out << "row,D_pred,exit_reason,h_star,subset_size,iterations,residual,weight_sum_gap,"
           "rounds,duplicate,error\n";
    for (std::size_t i = 0; i < predictions->entries.size(); ++i) {
      const auto& e = predictions->entries[i];
      out << i << ',';
      if (e.status != MAXENT_OK) {
        std::string msg = e.error;
        for (char& c : msg) {
          if (c == ',' || c == '\n' || c == '"') c = ' ';
        }
        out << ",,,,,,,,," << msg << '\n';
        continue;
      }
      out << format_number(e.value.empty() ? 0.0 : e.value[0]) << ',';
      if (e.has_diagnostics) {
        const auto& d = e.diagnostics;
        out << core::to_string(d.exit_reason) << ',' << format_number(d.h_star) << ','
            << d.subset_size << ',' << d.iterations << ',' << format_number(d.residual_error)
            << ',' << format_number(d.weight_sum_gap) << ',' << d.rounds << ','
            << (d.duplicate ? 1 : 0) << ",\n";
      } else {
        out << ",," << e.neighbors.size() << ",,,,,,\n";
      }
    }
    write_file(path, out.str());
  });
}

void maxent_predictions_destroy(maxent_predictions* predictions) { delete predictions; }

void maxent_ply_default(maxent_ply* ply) {
  if (ply == nullptr) return;
  const auto p = laminate::PlyProperties::t700g();
  *ply = maxent_ply{p.e1, p.e2, p.nu12, p.g12, p.thickness, p.nu23, p.g23};
}

maxent_status maxent_clt(const char* notation, const maxent_ply* ply, maxent_abd* out) {
  MAXENT_REQUIRE(notation);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    laminate::Layup layup;
    layup.name = notation;
    layup.angles = laminate::parse_layup_notation(notation);
    if (ply == nullptr) {
      layup.ply = laminate::PlyProperties::t700g();
    } else {
      layup.ply.e1 = ply->e1;
      layup.ply.e2 = ply->e2;
      layup.ply.nu12 = ply->nu12;
      layup.ply.g12 = ply->g12;
      layup.ply.thickness = ply->thickness;
      layup.ply.nu23 = ply->nu23;
      layup.ply.g23 = ply->g23;
    }
    const auto abd = laminate::abd_matrices(layup);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        out->a[r * 3 + c] = abd.a(r, c);
        out->b[r * 3 + c] = abd.b(r, c);
        out->d[r * 3 + c] = abd.d(r, c);
      }
    }
    const auto row = laminate::stiffness_feature_row(abd);
    for (std::size_t i = 0; i < row.size(); ++i) out->features[i] = row[i];
    out->plies = layup.angles.size();
  });
}

const char* maxent_stiffness_feature_name(size_t index) {
  const auto& names = laminate::stiffness_feature_names();
  return index < names.size() ? names[index].c_str() : "";
}

size_t maxent_feature_width(void) { return pipeline::feature_width; }

const char* maxent_feature_name(size_t column) {
  const auto& names = pipeline::feature_names();
  if (column < names.size()) return names[column].c_str();
  return column == names.size() ? pipeline::target_name : "";
}

maxent_status maxent_table_from_records(const char* path, const maxent_ingest_options* options,
                                        maxent_table** out, maxent_ingest_report* report) {
  MAXENT_REQUIRE(path);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    pipeline::IngestionContext ctx;
    bool lenient = false;
    if (options != nullptr) {
      lenient = options->lenient != 0;
      if (options->coupons_path != nullptr && *options->coupons_path != '\0') {
        auto in = open_in(options->coupons_path);
        ctx.failure_cycles = pipeline::parse_failure_cycles(in);
      }
    }
    auto in = open_in(path);
    pipeline::IngestReport rep;
    auto table = pipeline::ingest_records(in, ctx, lenient, &rep);
    if (report != nullptr) {
      *report = maxent_ingest_report{rep.lines, rep.rows, rep.masked_cells, rep.warnings};
    }
    *out = new maxent_table{std::move(table), std::move(rep.messages)};
  });
}

size_t maxent_table_warning_count(const maxent_table* table) {
  return table ? table->warnings.size() : 0;
}

const char* maxent_table_warning(const maxent_table* table, size_t index) {
  if (table == nullptr || index >= table->warnings.size()) return "";
  return table->warnings[index].c_str();
}

maxent_status maxent_table_read_csv(const char* path, maxent_table** out) {
  MAXENT_REQUIRE(path);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    auto in = open_in(path);
    *out = new maxent_table{pipeline::read_csv(in), {}};
  });
}

maxent_status maxent_table_write_csv(const maxent_table* table, const char* path) {
  MAXENT_REQUIRE(table);
  MAXENT_REQUIRE(path);
  return guarded([&] {
    std::ostringstream out;
    pipeline::write_csv(table->table, out);
    write_file(path, out.str());
  });
}

size_t maxent_table_rows(const maxent_table* table) { return table ? table->table.rows() : 0; }

int maxent_table_has_targets(const maxent_table* table) {
  return table && table->table.has_targets() ? 1 : 0;
}

size_t maxent_table_masked_cells(const maxent_table* table) {
  return table ? table->table.masked_cells() : 0;
}

maxent_status maxent_table_row(const maxent_table* table, size_t index, double* values,
                               double* target) {
  MAXENT_REQUIRE(table);
  MAXENT_REQUIRE(values);
  if (index >= table->table.rows()) {
    return fail_with(MAXENT_ERR_OUT_OF_RANGE, "row index out of range");
  }
  const auto row = table->table.row(index);
  const auto missing = table->table.missing(index);
  for (std::size_t c = 0; c < row.size(); ++c) {
    values[c] = missing[c] ? std::numeric_limits<double>::quiet_NaN() : row[c];
  }
  if (target != nullptr) {
    *target = table->table.has_targets() ? table->table.target(index)
                                         : std::numeric_limits<double>::quiet_NaN();
  }
  return MAXENT_OK;
}

maxent_status maxent_table_split(const maxent_table* table, double test_fraction, uint64_t seed,
                                 int stratified, maxent_table** train, maxent_table** test) {
  MAXENT_REQUIRE(table);
  MAXENT_REQUIRE(train);
  MAXENT_REQUIRE(test);
  return guarded([&] {
    auto [tr, te] = pipeline::split(table->table, test_fraction, seed, stratified != 0);
    auto a = std::make_unique<maxent_table>(maxent_table{std::move(tr), {}});
    auto b = std::make_unique<maxent_table>(maxent_table{std::move(te), {}});
    *train = a.release();
    *test = b.release();
  });
}

void maxent_table_destroy(maxent_table* table) { delete table; }

maxent_status maxent_store_create(const maxent_table* training, maxent_scaler scaler,
                                  maxent_store** out) {
  MAXENT_REQUIRE(training);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    const auto kind = scaler == MAXENT_SCALER_STANDARD ? pipeline::ScalerKind::standard
                                                       : pipeline::ScalerKind::minmax_pm1;
    *out = new maxent_store{std::make_unique<pipeline::OnlineStore>(training->table, kind)};
  });
}

maxent_status maxent_store_set_refresh(maxent_store* store, int refresh) {
  MAXENT_REQUIRE(store);
  return guarded([&] { store->store->set_refresh_on_append(refresh != 0); });
}

maxent_status maxent_store_append_row(maxent_store* store, const double* values,
                                      double target) {
  MAXENT_REQUIRE(store);
  MAXENT_REQUIRE(values);
  return guarded([&] {
    require_finite(std::span<const double>(&target, 1), "target");
    store->store->append(row_from_c(values, target));
  });
}

maxent_status maxent_store_append_table(maxent_store* store, const maxent_table* rows) {
  MAXENT_REQUIRE(store);
  MAXENT_REQUIRE(rows);
  return guarded([&] {
    if (!rows->table.has_targets()) fail(ErrorCode::invalid_input, "appended rows need targets");
    for (std::size_t i = 0; i < rows->table.rows(); ++i) {
      pipeline::FeatureRow row;
      const auto v = rows->table.row(i);
      const auto m = rows->table.missing(i);
      row.values.assign(v.begin(), v.end());
      row.missing.assign(m.begin(), m.end());
      row.target = rows->table.target(i);
      store->store->append(row);
    }
  });
}

size_t maxent_store_rows(const maxent_store* store) { return store ? store->store->rows() : 0; }

size_t maxent_store_refit_count(const maxent_store* store) {
  return store ? store->store->refit_count() : 0;
}

maxent_status maxent_store_predict(const maxent_store* store, const maxent_table* queries,
                                   const maxent_params* params, unsigned parallelism,
                                   maxent_predictions** out) {
  MAXENT_REQUIRE(store);
  MAXENT_REQUIRE(queries);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    const auto p = from_c(params);
    p.validate();
    *out = wrap(store->store->predict(queries->table, p, workers(parallelism)));
  });
}

maxent_status maxent_store_predict_wknn(const maxent_store* store, const maxent_table* queries,
                                        size_t k, unsigned parallelism,
                                        maxent_predictions** out) {
  MAXENT_REQUIRE(store);
  MAXENT_REQUIRE(queries);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    const auto rows = store->store->rows();
    if (k == 0 || k > rows) fail(ErrorCode::parameter, "k must lie in 1.." + std::to_string(rows));
    *out = wrap(store->store->predict_wknn(queries->table, k, workers(parallelism)));
  });
}

maxent_status maxent_store_table(const maxent_store* store, maxent_table** out) {
  MAXENT_REQUIRE(store);
  MAXENT_REQUIRE(out);
  return guarded([&] { *out = new maxent_table{store->store->table(), {}}; });
}

void maxent_store_destroy(maxent_store* store) { delete store; }

maxent_status maxent_metrics_compute(const double* y_true, const double* y_pred, size_t n,
                                     maxent_metrics* out) {
  MAXENT_REQUIRE(out);
  if (n > 0) {
    MAXENT_REQUIRE(y_true);
    MAXENT_REQUIRE(y_pred);
  }
  return guarded([&] {
    const auto m = eval::compute_metrics(std::span<const double>(y_true, n),
                                         std::span<const double>(y_pred, n));
    *out = maxent_metrics{m.r2, m.mse, m.n};
  });
}

void maxent_toy_spec_default(maxent_toy_spec* spec, maxent_toy_kind kind) {
  if (spec == nullptr) return;
  const eval::ToySpec d;
  *spec = maxent_toy_spec{kind, d.train_count, d.eval_count, d.seed};
}

maxent_status maxent_toy_run(const maxent_toy_spec* spec, maxent_predictor predictor,
                             const maxent_params* params, size_t k, unsigned parallelism,
                             maxent_toy_report** out) {
  MAXENT_REQUIRE(spec);
  MAXENT_REQUIRE(out);
  return guarded([&] {
    eval::ToySpec s;
    s.kind = spec->kind == MAXENT_TOY_CLASSIFICATION ? eval::ToyKind::classification
                                                     : eval::ToyKind::regression;
    s.train_count = spec->train_count;
    s.eval_count = spec->eval_count;
    s.seed = spec->seed;
    s.validate();
    eval::ToyPredictor p;
    if (predictor == MAXENT_PREDICTOR_WKNN) {
      if (k == 0 || k > s.train_count) {
        fail(ErrorCode::parameter, "k must lie in 1.." + std::to_string(s.train_count));
      }
      p = eval::ToyPredictor::wknn(k);
    } else {
      p = eval::ToyPredictor::maxent(from_c(params));
      p.params.validate();
    }
    const auto rep = eval::run_toy_experiment(s, p, workers(parallelism));
    *out = new maxent_toy_report{rep.csv(), rep.metrics_json()};
  });
}

const char* maxent_toy_report_csv(const maxent_toy_report* report) {
  return report ? report->csv.c_str() : "";
}

const char* maxent_toy_report_metrics_json(const maxent_toy_report* report) {
  return report ? report->metrics.c_str() : "";
}

void maxent_toy_report_destroy(maxent_toy_report* report) { delete report; }

}  // extern "C"
