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

// maxent: command-line front end over the C library.
//
// Exit codes: 0 success, 2 usage or input validation, 1 runtime failure.

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxent/maxent.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct CommandError {
  int code;
  std::string message;
};

int exit_code_for(maxent_status status) {
  switch (status) {
    case MAXENT_ERR_INVALID_INPUT:
    case MAXENT_ERR_PARAMETER:
    case MAXENT_ERR_PARSE:
    case MAXENT_ERR_NULL_ARGUMENT:
    case MAXENT_ERR_OUT_OF_RANGE:
      return exit_usage;
    default:
      return exit_runtime;
  }
}

void check(maxent_status status) {
  if (status != MAXENT_OK) throw CommandError{exit_code_for(status), maxent_last_error()};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using TablePtr = std::unique_ptr<maxent_table, Deleter<maxent_table, maxent_table_destroy>>;
using StorePtr = std::unique_ptr<maxent_store, Deleter<maxent_store, maxent_store_destroy>>;
using PredictionsPtr =
    std::unique_ptr<maxent_predictions, Deleter<maxent_predictions, maxent_predictions_destroy>>;
using ToyPtr =
    std::unique_ptr<maxent_toy_report, Deleter<maxent_toy_report, maxent_toy_report_destroy>>;

TablePtr read_table(const std::string& path) {
  maxent_table* t = nullptr;
  check(maxent_table_read_csv(path.c_str(), &t));
  return TablePtr(t);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError{exit_runtime, "cannot write " + path.string()};
  out << text;
}

// JSON config: top-level keys name flags of the invoked command; an object
// under a command name applies to that command only. Flags given on the
// command line win.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::vector<std::string> commands) : commands_(std::move(commands)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      const bool is_command =
          std::find(commands_.begin(), commands_.end(), key) != commands_.end();
      if (is_command && value.is_object()) {
        for (const auto& [k, v] : value.items()) items.push_back(item({key}, k, v));
      } else {
        for (const auto& cmd : commands_) items.push_back(item({cmd}, key, value));
      }
    }
    return items;
  }

 private:
  static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& name,
                              const json& value) {
    CLI::ConfigItem it;
    it.parents = std::move(parents);
    it.name = name;
    if (value.is_array()) {
      for (const auto& v : value) it.inputs.push_back(scalar(v));
    } else {
      it.inputs.push_back(scalar(value));
    }
    return it;
  }

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  std::vector<std::string> commands_;
};

struct ParamFlags {
  maxent_params params{};
  ParamFlags() { maxent_params_default(&params); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--threshold-filter", params.threshold_filter, "RBF prefilter threshold");
    cmd->add_option("--threshold-entropy", params.threshold_entropy,
                    "RBF threshold during the bandwidth sweep");
    cmd->add_option("--convergence-tolerance", params.convergence_tolerance,
                    "bound on error + |1 - sum u|");
    cmd->add_option("--it-convergence", params.it_convergence);
    cmd->add_option("--local-min-tolerance", params.local_min_tolerance);
    cmd->add_option("--it-local-min", params.it_local_min);
    cmd->add_option("--q1", params.q1_initial_error, "initial previous-error value");
    cmd->add_option("--q2", params.q2_hfilter_increment,
                    "prefilter bandwidth increment (<= 0: automatic)");
    cmd->add_option("--sweep-points", params.sweep_points);
    cmd->add_option("--max-rounds", params.max_minconvex_rounds);
  }

  void validate() const {
    if (maxent_params_validate(&params) != MAXENT_OK) {
      throw CommandError{exit_usage, maxent_last_error()};
    }
  }
};

// ---- toy-reg / toy-clf --------------------------------------------------

struct ToyOptions {
  std::uint64_t seed = 7;
  std::size_t train = 500;
  std::size_t eval = 50;
  std::string out_dir = ".";
  std::size_t k = 5;
  unsigned parallel = 1;
  ParamFlags params;
};

void run_toy(const ToyOptions& o, maxent_toy_kind kind) {
  o.params.validate();
  maxent_toy_spec spec;
  maxent_toy_spec_default(&spec, kind);
  spec.seed = o.seed;
  spec.train_count = o.train;
  spec.eval_count = o.eval;
  std::filesystem::create_directories(o.out_dir);
  const std::string stem = kind == MAXENT_TOY_REGRESSION ? "toy_reg" : "toy_clf";

  std::string maxent_metrics;
  for (auto predictor : {MAXENT_PREDICTOR_MAXENT, MAXENT_PREDICTOR_WKNN}) {
    maxent_toy_report* raw = nullptr;
    check(maxent_toy_run(&spec, predictor, &o.params.params, o.k, o.parallel, &raw));
    ToyPtr rep(raw);
    const std::string name = stem + (predictor == MAXENT_PREDICTOR_MAXENT ? "_maxent" : "_wknn");
    const auto dir = std::filesystem::path(o.out_dir);
    write_text(dir / (name + ".csv"), maxent_toy_report_csv(rep.get()));
    write_text(dir / (name + "_metrics.json"), maxent_toy_report_metrics_json(rep.get()));
    if (predictor == MAXENT_PREDICTOR_MAXENT) maxent_metrics = maxent_toy_report_metrics_json(rep.get());
  }
  std::cout << maxent_metrics;
}

// ---- clt ----------------------------------------------------------------

struct CltOptions {
  std::string notation;
  maxent_ply ply{};
  CltOptions() { maxent_ply_default(&ply); }
};

void run_clt(const CltOptions& o) {
  maxent_abd abd;
  const auto status = maxent_clt(o.notation.c_str(), &o.ply, &abd);
  if (status == MAXENT_ERR_PARSE) {
    const auto pos = maxent_last_error_position();
    std::ostringstream msg;
    msg << maxent_last_error() << "\n  " << o.notation << "\n  " << std::string(pos, ' ') << '^';
    throw CommandError{exit_usage, msg.str()};
  }
  check(status);
  auto matrix = [](const double* m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) rows.push_back({m[3 * r], m[3 * r + 1], m[3 * r + 2]});
    return rows;
  };
  json j;
  j["layup"] = o.notation;
  j["plies"] = abd.plies;
  j["A"] = matrix(abd.a);
  j["B"] = matrix(abd.b);
  j["D"] = matrix(abd.d);
  json features;
  for (std::size_t i = 0; i < 18; ++i) features[maxent_stiffness_feature_name(i)] = abd.features[i];
  j["features"] = features;
  std::cout << j.dump(2) << '\n';
}

// ---- features -----------------------------------------------------------

struct FeaturesOptions {
  std::string records;
  std::string out;
  std::string coupons;
  bool lenient = false;
};

void run_features(const FeaturesOptions& o) {
  maxent_ingest_options opts{o.lenient ? 1 : 0, o.coupons.empty() ? nullptr : o.coupons.c_str()};
  maxent_ingest_report rep{};
  maxent_table* raw = nullptr;
  check(maxent_table_from_records(o.records.c_str(), &opts, &raw, &rep));
  TablePtr table(raw);
  for (std::size_t i = 0; i < maxent_table_warning_count(table.get()); ++i) {
    std::cerr << "warning: " << maxent_table_warning(table.get(), i) << '\n';
  }
  check(maxent_table_write_csv(table.get(), o.out.c_str()));
  std::cout << "rows=" << rep.rows << " masked_cells=" << rep.masked_cells
            << " warnings=" << rep.warnings << '\n';
}

// ---- predict / append ---------------------------------------------------

struct PredictOptions {
  std::string table;
  std::string queries;
  std::string out;
  std::string scaler = "minmax";
  std::string predictor = "maxent";
  std::size_t k = 5;
  unsigned parallel = 1;
  ParamFlags params;
};

maxent_scaler scaler_of(const std::string& name) {
  return name == "standard" ? MAXENT_SCALER_STANDARD : MAXENT_SCALER_MINMAX;
}

void predict_into(const maxent_store* store, const PredictOptions& o, const std::string& queries,
                  const std::string& out) {
  auto q = read_table(queries);
  maxent_predictions* raw = nullptr;
  if (o.predictor == "wknn") {
    check(maxent_store_predict_wknn(store, q.get(), o.k, o.parallel, &raw));
  } else {
    check(maxent_store_predict(store, q.get(), &o.params.params, o.parallel, &raw));
  }
  PredictionsPtr preds(raw);
  check(maxent_predictions_write_csv(preds.get(), out.c_str()));
  std::size_t failed = 0;
  for (std::size_t i = 0; i < maxent_predictions_count(preds.get()); ++i) {
    if (maxent_prediction_status(preds.get(), i) != MAXENT_OK) ++failed;
  }
  std::cout << "predictions=" << maxent_predictions_count(preds.get()) << " failed=" << failed
            << '\n';
}

StorePtr open_store(const std::string& table, const std::string& scaler) {
  auto train = read_table(table);
  maxent_store* raw = nullptr;
  check(maxent_store_create(train.get(), scaler_of(scaler), &raw));
  return StorePtr(raw);
}

void run_predict(const PredictOptions& o) {
  o.params.validate();
  auto store = open_store(o.table, o.scaler);
  predict_into(store.get(), o, o.queries, o.out);
}

struct AppendOptions {
  PredictOptions predict;
  std::string records;
  std::string coupons;
  bool lenient = false;
  std::string predictions;
};

void run_append(const AppendOptions& o) {
  o.predict.params.validate();
  if (o.predict.queries.empty() != o.predictions.empty()) {
    throw CommandError{exit_usage, "--queries and --predictions go together"};
  }
  auto store = open_store(o.predict.table, o.predict.scaler);
  maxent_ingest_options opts{o.lenient ? 1 : 0, o.coupons.empty() ? nullptr : o.coupons.c_str()};
  maxent_ingest_report rep{};
  maxent_table* raw = nullptr;
  check(maxent_table_from_records(o.records.c_str(), &opts, &raw, &rep));
  TablePtr rows(raw);
  check(maxent_store_append_table(store.get(), rows.get()));
  std::cout << "appended=" << rep.rows << " rows=" << maxent_store_rows(store.get())
            << " refits=" << maxent_store_refit_count(store.get()) - 1 << '\n';
  if (!o.predict.out.empty()) {
    maxent_table* all = nullptr;
    check(maxent_store_table(store.get(), &all));
    TablePtr table(all);
    check(maxent_table_write_csv(table.get(), o.predict.out.c_str()));
  }
  if (!o.predictions.empty()) predict_into(store.get(), o.predict, o.predict.queries, o.predictions);
}

// ---- eval ---------------------------------------------------------------

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<double> read_column(const std::string& path, const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{exit_runtime, "cannot open " + path};
  std::string line;
  if (!std::getline(in, line)) throw CommandError{exit_usage, path + ": missing header"};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line);
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw CommandError{exit_usage, path + ": no column '" + column + "'"};
  const auto idx = static_cast<std::size_t>(it - header.begin());
  std::vector<double> values;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (idx >= fields.size() || fields[idx].empty()) {
      throw CommandError{exit_usage, path + " line " + std::to_string(n) + ": no value in '" +
                                         column + "'"};
    }
    double v = 0.0;
    const auto& f = fields[idx];
    const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
      throw CommandError{exit_usage, path + " line " + std::to_string(n) + ": '" + f +
                                         "' is not a number"};
    }
    values.push_back(v);
  }
  return values;
}

struct EvalOptions {
  std::string predictions;
  std::string targets;
  std::string pred_column = "D_pred";
  std::string target_column = "D";
  std::string out;
};

void run_eval(const EvalOptions& o) {
  const auto y_pred = read_column(o.predictions, o.pred_column);
  const auto y_true = read_column(o.targets, o.target_column);
  if (y_pred.size() != y_true.size()) {
    throw CommandError{exit_usage, "row count mismatch: " + std::to_string(y_pred.size()) +
                                       " predictions vs " + std::to_string(y_true.size()) +
                                       " targets"};
  }
  maxent_metrics m{};
  check(maxent_metrics_compute(y_true.data(), y_pred.data(), y_true.size(), &m));
  json j;
  j["r2"] = m.r2;
  j["mse"] = m.mse;
  j["n"] = m.n;
  const auto text = j.dump(2) + "\n";
  if (!o.out.empty()) write_text(o.out, text);
  std::cout << text;
}

unsigned default_parallelism() {
  if (const char* env = std::getenv("MAXENT_PARALLEL")) {
    unsigned v = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy nearest-neighbour prediction of fatigue damage"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(maxent_version()));
  const std::vector<std::string> commands{"toy-reg", "toy-clf", "clt",  "features",
                                          "predict", "append",  "eval"};
  app.config_formatter(std::make_shared<JsonConfig>(commands));
  app.set_config("--config", "", "JSON file supplying flag values");

  const unsigned parallel = default_parallelism();

  ToyOptions toy_reg, toy_clf;
  toy_reg.parallel = toy_clf.parallel = parallel;
  auto add_toy = [&](const char* name, const char* about, ToyOptions& o) {
    auto* cmd = app.add_subcommand(name, about);
    cmd->add_option("--seed", o.seed, "training-set seed")->capture_default_str();
    cmd->add_option("--train", o.train, "training points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--eval", o.eval, "diagonal evaluation points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out-dir", o.out_dir, "directory for CSV and metrics files")
        ->capture_default_str();
    cmd->add_option("--k", o.k, "neighbours for the WKNN baseline")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--parallel", o.parallel, "worker threads")->check(CLI::PositiveNumber);
    o.params.attach(cmd);
    return cmd;
  };
  auto* toy_reg_cmd = add_toy("toy-reg", "Toy regression on the unit square", toy_reg);
  auto* toy_clf_cmd = add_toy("toy-clf", "Toy classification on the unit square", toy_clf);

  CltOptions clt;
  auto* clt_cmd = app.add_subcommand("clt", "Laminate A/B/D matrices for a layup");
  clt_cmd->add_option("layup", clt.notation, "layup notation, e.g. [90_2/45/-45]_2S")->required();
  clt_cmd->add_option("--e1", clt.ply.e1, "fibre-direction modulus [GPa]");
  clt_cmd->add_option("--e2", clt.ply.e2, "transverse modulus [GPa]");
  clt_cmd->add_option("--nu12", clt.ply.nu12, "major Poisson ratio");
  clt_cmd->add_option("--g12", clt.ply.g12, "in-plane shear modulus [GPa]");
  clt_cmd->add_option("--thickness", clt.ply.thickness, "ply thickness [mm]");

  FeaturesOptions feat;
  auto* feat_cmd = app.add_subcommand("features", "Build the feature table from records");
  feat_cmd->add_option("--records", feat.records, "JSON-lines measurement records")->required();
  feat_cmd->add_option("--out", feat.out, "feature-table CSV to write")->required();
  feat_cmd->add_option("--coupons", feat.coupons, "JSON map of coupon id to cycles at failure");
  feat_cmd->add_flag("--lenient", feat.lenient, "skip malformed records");

  PredictOptions pred;
  pred.parallel = parallel;
  auto add_predict_flags = [](CLI::App* cmd, PredictOptions& o, bool required) {
    cmd->add_option("--table", o.table, "training feature-table CSV")->required();
    auto* q = cmd->add_option("--queries", o.queries, "query feature-table CSV");
    if (required) q->required();
    cmd->add_option("--scaler", o.scaler, "standard | minmax")
        ->check(CLI::IsMember({"standard", "minmax"}))
        ->capture_default_str();
    cmd->add_option("--predictor", o.predictor, "maxent | wknn")
        ->check(CLI::IsMember({"maxent", "wknn"}))
        ->capture_default_str();
    cmd->add_option("--k", o.k, "neighbours for wknn")->check(CLI::PositiveNumber);
    cmd->add_option("--parallel", o.parallel, "worker threads")->check(CLI::PositiveNumber);
    o.params.attach(cmd);
  };
  auto* pred_cmd = app.add_subcommand("predict", "Predict D for every query row");
  add_predict_flags(pred_cmd, pred, true);
  pred_cmd->add_option("--out", pred.out, "predictions CSV to write")->required();

  AppendOptions app_opts;
  app_opts.predict.parallel = parallel;
  auto* append_cmd = app.add_subcommand("append", "Stream records into the training store");
  add_predict_flags(append_cmd, app_opts.predict, false);
  append_cmd->add_option("--records", app_opts.records, "JSON-lines records to append")
      ->required();
  append_cmd->add_option("--coupons", app_opts.coupons, "JSON map of coupon id to cycles");
  append_cmd->add_flag("--lenient", app_opts.lenient, "skip malformed records");
  append_cmd->add_option("--out", app_opts.predict.out, "updated feature-table CSV");
  append_cmd->add_option("--predictions", app_opts.predictions,
                         "predictions CSV for --queries after appending");

  EvalOptions ev;
  auto* eval_cmd = app.add_subcommand("eval", "R^2 and MSE of a predictions file");
  eval_cmd->add_option("--predictions", ev.predictions, "predictions CSV")->required();
  eval_cmd->add_option("--targets", ev.targets, "CSV holding the true values")->required();
  eval_cmd->add_option("--pred-column", ev.pred_column)->capture_default_str();
  eval_cmd->add_option("--target-column", ev.target_column)->capture_default_str();
  eval_cmd->add_option("--out", ev.out, "metrics JSON to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*toy_reg_cmd) run_toy(toy_reg, MAXENT_TOY_REGRESSION);
    if (*toy_clf_cmd) run_toy(toy_clf, MAXENT_TOY_CLASSIFICATION);
    if (*clt_cmd) run_clt(clt);
    if (*feat_cmd) run_features(feat);
    if (*pred_cmd) run_predict(pred);
    if (*append_cmd) run_append(app_opts);
    if (*eval_cmd) run_eval(ev);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_ok;
}
