// Copyright 2026 the stcv authors
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

#include <CLI11.hpp>
#include <iostream>

#include "stcv/io/csv.hpp"
#include "stcv/io/geojson.hpp"
#include "stcv/io/plan_json.hpp"
#include "stcv/io/result_json.hpp"
#include "stcv/io/svg.hpp"
#include "stcv/partition/registry.hpp"
#include "stcv/resample.hpp"
#include "stcv/synth.hpp"
#include "stcv/variogram.hpp"

namespace {

struct TaskFlags {
  std::string input;
  std::string id = "task";
  std::string response = "response";
  std::string x = "x";
  std::string y = "y";
  std::string time_col, group_col, location_col, positive, features;
  bool coords_as_features = false;
  bool geojson = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "task file (CSV, or GeoJSON with --geojson)")
        ->required();
    cmd->add_flag("--geojson", geojson, "input is a GeoJSON FeatureCollection of points");
    cmd->add_option("--id", id, "task id");
    cmd->add_option("--response", response, "response column");
    cmd->add_option("--x-col", x, "x coordinate column");
    cmd->add_option("--y-col", y, "y coordinate column");
    cmd->add_option("--time-col", time_col, "time column (integer or YYYY-MM-DD)");
    cmd->add_option("--group-col", group_col, "group column");
    cmd->add_option("--location-col", location_col, "location id column");
    cmd->add_option("--positive", positive, "positive class label");
    cmd->add_option("--features", features, "comma-separated feature columns (default: all)");
    cmd->add_flag("--coords-as-features", coords_as_features,
                  "use the coordinates as model features");
  }

  stcv::Task load() const {
    stcv::TaskSchema schema;
    schema.id = id;
    schema.response = response;
    schema.x = x;
    schema.y = y;
    if (!time_col.empty()) schema.time = time_col;
    if (!group_col.empty()) schema.group = group_col;
    if (!location_col.empty()) schema.location = location_col;
    if (!positive.empty()) schema.positive_label = positive;
    schema.coords_as_features = coords_as_features;
    if (!features.empty()) schema.feature_columns = stcv::detail::split_list(features);
    return geojson ? stcv::io::load_task_geojson(input, schema)
                   : stcv::io::load_task_csv(input, schema);
  }
};

stcv::ParamMap parse_params(const std::vector<std::string>& kvs) {
  stcv::ParamMap params;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return params;
}

stcv::Learner make_learner(const std::string& name, int k_neighbors, double lambda,
                           int epochs, double learn_rate) {
  if (name == "knn") return stcv::KnnLearner{k_neighbors, stcv::PredictType::probability};
  if (name == "logistic")
    return stcv::LogisticLearner{lambda, epochs, learn_rate, stcv::PredictType::probability};
  throw std::invalid_argument("unknown learner: " + name);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : stcv::detail::split_list(s)) {
    const auto v = stcv::parse_int(part);
    if (!v) throw std::invalid_argument("not an integer: " + part);
    out.push_back(static_cast<int>(*v));
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path, bool to_stdout) {
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << text;
  }
  if (to_stdout || out_path.empty()) std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatiotemporal cross-validation toolkit"};
  app.require_subcommand(1);

  // ---- partition ----
  auto* partition = app.add_subcommand("partition", "instantiate a resampling plan");
  TaskFlags part_task;
  part_task.attach(partition);
  std::string part_method;
  int part_folds = 0, part_repeats = 1;
  std::uint64_t part_seed = 0;
  std::vector<std::string> part_params;
  std::string part_out;
  bool part_json = false;
  partition->add_option("--method", part_method,
                        "cv | spcv_buffer | spcv_disc | spcv_coords | spcv_tiles | "
                        "custom_cv | spcv_block | spcv_env | sptcv_cstf")
      ->required();
  partition->add_option("--folds", part_folds, "number of folds");
  partition->add_option("--repeats", part_repeats, "number of repetitions");
  partition->add_option("--seed", part_seed, "random seed");
  partition->add_option("--param", part_params, "method parameter key=value (repeatable)");
  partition->add_option("--out", part_out, "plan JSON output path");
  partition->add_flag("--json", part_json, "print the plan JSON to stdout");

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "validate a plan against a task");
  TaskFlags val_task;
  val_task.attach(validate);
  std::string val_plan;
  bool val_json = false;
  validate->add_option("--plan", val_plan, "plan JSON path")->required();
  validate->add_flag("--json", val_json, "print the report as JSON");

  // ---- resample ----
  auto* resample_cmd = app.add_subcommand("resample", "run the CV estimator over a plan");
  TaskFlags res_task;
  res_task.attach(resample_cmd);
  std::string res_plan, res_learner = "knn", res_measure = "auroc", res_out;
  int res_k = 1, res_epochs = 200;
  double res_lambda = 1e-3, res_lr = 0.1;
  bool res_json = false;
  resample_cmd->add_option("--plan", res_plan, "plan JSON path")->required();
  resample_cmd->add_option("--learner", res_learner, "knn | logistic");
  resample_cmd->add_option("--k-neighbors", res_k, "knn neighbor count");
  resample_cmd->add_option("--lambda", res_lambda, "logistic L2 penalty");
  resample_cmd->add_option("--epochs", res_epochs, "logistic epochs");
  resample_cmd->add_option("--learn-rate", res_lr, "logistic learning rate");
  resample_cmd->add_option("--measure", res_measure, "auroc | misclassification | rmse");
  resample_cmd->add_option("--out", res_out, "result JSON output path");
  resample_cmd->add_flag("--json", res_json, "print the result JSON to stdout");

  // ---- nested ----
  auto* nested = app.add_subcommand("nested", "nested CV for hyperparameter tuning");
  TaskFlags nest_task;
  nest_task.attach(nested);
  std::string nest_plan, nest_learner = "knn", nest_measure = "auroc", nest_out;
  std::string nest_grid_k = "1,5,15", nest_grid_lambda, nest_inner_method = "spcv_coords";
  int nest_inner_folds = 3;
  std::vector<std::string> nest_inner_params;
  bool nest_json = false;
  nested->add_option("--plan", nest_plan, "outer plan JSON path")->required();
  nested->add_option("--learner", nest_learner, "knn | logistic");
  nested->add_option("--grid-k", nest_grid_k, "knn neighbor grid, e.g. 1,5,15");
  nested->add_option("--grid-lambda", nest_grid_lambda, "logistic lambda grid");
  nested->add_option("--inner-method", nest_inner_method, "inner resampling method");
  nested->add_option("--inner-folds", nest_inner_folds, "inner fold count");
  nested->add_option("--inner-param", nest_inner_params,
                     "inner method parameter key=value (repeatable)");
  nested->add_option("--measure", nest_measure, "auroc | misclassification | rmse");
  nested->add_option("--out", nest_out, "result JSON output path");
  nested->add_flag("--json", nest_json, "print the result JSON to stdout");

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate a spatially autocorrelated task");
  int synth_n = 400, synth_noise = 2;
  double synth_sigma2 = 1.0, synth_rho = 0.1, synth_nugget = 0.0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--n", synth_n, "number of observations");
  synth->add_option("--sigma2", synth_sigma2, "field variance");
  synth->add_option("--rho", synth_rho, "correlation length (effective range ~ 3*rho)");
  synth->add_option("--nugget", synth_nugget, "nugget variance");
  synth->add_option("--noise-features", synth_noise, "pure-noise feature count");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--out", synth_out, "task CSV output path")->required();

  // ---- plot ----
  auto* plot = app.add_subcommand("plot", "render partitions as SVG");
  TaskFlags plot_task;
  plot_task.attach(plot);
  std::string plot_plan, plot_folds = "1", plot_out;
  int plot_repeat = 1;
  double plot_size = 3.0;
  bool plot_blocks = false, plot_facet = false;
  plot->add_option("--plan", plot_plan, "plan JSON path")->required();
  plot->add_option("--folds", plot_folds, "fold ids to draw, e.g. 1,2");
  plot->add_option("--repeat", plot_repeat, "repeat to draw");
  plot->add_option("--point-size", plot_size, "point radius");
  plot->add_flag("--show-blocks", plot_blocks, "draw block outlines (grid methods)");
  plot->add_flag("--facet-time", plot_facet, "facet the first fold by time key");
  plot->add_option("--out", plot_out, "SVG output path")->required();

  // ---- range ----
  auto* range = app.add_subcommand("range", "estimate the autocorrelation range");
  TaskFlags range_task;
  range_task.attach(range);
  std::string range_value_col;
  int range_lags = 15;
  double range_cutoff = 0.0;
  bool range_json = false;
  range->add_option("--value-col", range_value_col,
                    "numeric column to analyze (default: the response)");
  range->add_option("--n-lags", range_lags, "number of distance bins");
  range->add_option("--cutoff", range_cutoff,
                    "largest pair distance used (default: half the bbox diagonal)");
  range->add_flag("--json", range_json, "print the estimate as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (partition->parsed()) {
      const stcv::Task task = part_task.load();
      stcv::ParamMap params = parse_params(part_params);
      if (part_folds > 0) params["folds"] = std::to_string(part_folds);
      const stcv::ResamplingPlan plan =
          stcv::make_plan(task, part_method, params, part_seed, part_repeats);
      emit(stcv::io::plan_to_string(plan), part_out, part_json);
    } else if (validate->parsed()) {
      const stcv::Task task = val_task.load();
      const stcv::ResamplingPlan plan = stcv::io::load_plan(val_plan);
      const stcv::ValidationReport report = stcv::validate_plan(plan, task);
      if (val_json) {
        nlohmann::ordered_json doc;
        doc["pass"] = report.pass;
        doc["violations"] = report.violations;
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << (report.pass ? "pass" : "fail") << "\n";
        for (const auto& v : report.violations) std::cout << "  " << v << "\n";
      }
      return report.pass ? 0 : 1;
    } else if (resample_cmd->parsed()) {
      const stcv::Task task = res_task.load();
      const stcv::ResamplingPlan plan = stcv::io::load_plan(res_plan);
      const stcv::Learner learner =
          make_learner(res_learner, res_k, res_lambda, res_epochs, res_lr);
      const stcv::EvaluationResult result =
          stcv::resample(task, learner, plan, stcv::measure_from_string(res_measure));
      emit(stcv::io::result_to_string(result), res_out, res_json);
    } else if (nested->parsed()) {
      const stcv::Task task = nest_task.load();
      const stcv::ResamplingPlan plan = stcv::io::load_plan(nest_plan);
      std::vector<stcv::Learner> grid;
      if (nest_learner == "knn") {
        for (int k : parse_int_list(nest_grid_k))
          grid.push_back(stcv::KnnLearner{k, stcv::PredictType::probability});
      } else if (nest_learner == "logistic") {
        if (nest_grid_lambda.empty())
          throw std::invalid_argument("logistic tuning needs --grid-lambda");
        for (const auto& part : stcv::detail::split_list(nest_grid_lambda)) {
          const auto v = stcv::parse_double(part);
          if (!v) throw std::invalid_argument("not numeric: " + part);
          grid.push_back(stcv::LogisticLearner{*v, 200, 0.1, stcv::PredictType::probability});
        }
      } else {
        throw std::invalid_argument("unknown learner: " + nest_learner);
      }
      stcv::ParamMap inner_params = parse_params(nest_inner_params);
      inner_params["folds"] = std::to_string(nest_inner_folds);
      const stcv::NestedResult result =
          stcv::nested_resample(task, grid, nest_inner_method, inner_params, plan,
                                stcv::measure_from_string(nest_measure));
      nlohmann::ordered_json doc = stcv::io::result_to_json(result.outer);
      doc["chosen"] = result.chosen;
      emit(doc.dump(2) + "\n", nest_out, nest_json);
    } else if (synth->parsed()) {
      const stcv::SyntheticField field = stcv::sample_grf(
          synth_n, synth_sigma2, synth_rho, synth_nugget, stcv::derive_seed(synth_seed, 1));
      const stcv::Task task =
          stcv::make_classification_task(field, synth_noise, stcv::derive_seed(synth_seed, 2));
      stcv::io::save_task_csv_file(task, synth_out);
    } else if (plot->parsed()) {
      const stcv::Task task = plot_task.load();
      const stcv::ResamplingPlan plan = stcv::io::load_plan(plot_plan);
      stcv::io::PlotSpec spec;
      spec.fold_ids = parse_int_list(plot_folds);
      spec.repeat = plot_repeat;
      spec.point_size = plot_size;
      spec.show_blocks = plot_blocks;
      spec.facet_time = plot_facet;
      std::optional<stcv::BlockSet> blocks;
      if (plot_blocks)
        blocks = stcv::block_geometry(task, plan.method, plan.params,
                                      stcv::derive_seed(plan.seed, 1));
      stcv::io::save_partition_svg(task, plan, spec, plot_out,
                                   blocks ? &*blocks : nullptr);
    } else if (range->parsed()) {
      const stcv::Task task = range_task.load();
      std::vector<double> values;
      if (!range_value_col.empty()) {
        values = task.feature(range_value_col);
      } else if (task.response_kind == stcv::ResponseKind::numeric) {
        values = task.values;
      } else {
        throw std::invalid_argument(
            "response is categorical; name a numeric column with --value-col");
      }
      if (range_cutoff <= 0.0) {
        const stcv::Bounds box = stcv::bounds_of(task.coords);
        range_cutoff =
            0.5 * std::hypot(box.width(), box.height());
      }
      const stcv::RangeEstimate est = stcv::estimate_autocorrelation_range(
          values, task.coords, range_lags, range_cutoff);
      if (range_json) {
        nlohmann::ordered_json doc;
        doc["range"] = est.range;
        doc["sill"] = est.sill;
        doc["bins"] = nlohmann::ordered_json::array();
        for (const auto& bin : est.bins) {
          nlohmann::ordered_json b;
          b["midpoint"] = bin.midpoint;
          b["gamma"] = bin.gamma;
          b["pairs"] = bin.pairs;
          b["interpolated"] = bin.interpolated;
          doc["bins"].push_back(std::move(b));
        }
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << "range " << stcv::format_double(est.range) << "\n";
        std::cout << "sill " << stcv::format_double(est.sill) << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
