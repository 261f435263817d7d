#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sngbm/csv.hpp"
#include "sngbm/errors.hpp"

namespace sngbm::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

// Writes through `fallback` when path is empty.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  auto file = open_output(path);
  fn(file);
  if (!file) throw Error("failed writing '" + path + "'");
}

// Feature matrix in model order. Columns other than the model's features and
// `allowed_extra` are a schema error, as are missing features.
Matrix model_features(const BoostModel& model, const CsvTable& table,
                      const std::string& allowed_extra) {
  std::vector<std::string> missing;
  for (const auto& name : model.feature_names) {
    if (!table.has_column(name)) missing.push_back(name);
  }
  std::vector<std::string> extra;
  for (const auto& name : table.header) {
    const bool known = std::find(model.feature_names.begin(), model.feature_names.end(), name) !=
                       model.feature_names.end();
    if (!known && name != allowed_extra) extra.push_back(name);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "input columns do not match the model";
    auto list = [&](const char* label, const std::vector<std::string>& names) {
      if (names.empty()) return;
      msg += std::string("; ") + label + ":";
      for (const auto& n : names) msg += " " + n;
    };
    list("missing", missing);
    list("extra", extra);
    throw InvalidInput(msg);
  }
  return select_columns(table, model.feature_names);
}

void write_rows(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  write_csv(out, header, rows);
}

}  // namespace

TrainResult cmd_train(const TrainOptions& opts, std::ostream& log) {
  if (opts.input.empty() || opts.output.empty()) {
    throw ConfigError("train needs --input and --output");
  }
  opts.boost.validate();
  const CsvTable table = read_csv_file(opts.input);
  Dataset data = dataset_from_csv(table, opts.target, opts.log_transform);

  TrainResult result = train(data, opts.boost);
  result.model.log_transform = opts.log_transform;
  result.model.target = opts.target;
  save_model_file(result.model, opts.output);

  const std::string trace_path = opts.trace.empty() ? opts.output + ".trace.csv" : opts.trace;
  with_output(trace_path, log, [&](std::ostream& out) {
    std::vector<std::vector<double>> rows;
    rows.reserve(result.nll_trace.size());
    for (std::size_t m = 0; m < result.nll_trace.size(); ++m) {
      const double rho = m == 0 ? 0.0 : result.model.iterations[m - 1].rho;
      rows.push_back({static_cast<double>(m), rho, result.nll_trace[m]});
    }
    write_rows(out, {"iteration", "rho", "train_nll"}, rows);
  });

  if (result.status == TrainStatus::all_iterations_skipped) {
    log << "warning: every iteration was skipped by the line search\n";
  }
  log << "trained " << result.model.iterations.size() << " iterations on " << data.rows()
      << " rows; final train NLL " << format_double(result.nll_trace.back()) << "\n";
  return result;
}

void cmd_predict(const PredictOptions& opts, std::ostream& out) {
  if (opts.model.empty() || opts.input.empty()) throw ConfigError("predict needs --model and --input");
  const BoostModel model = load_model_file(opts.model);
  const CsvTable table = read_csv_file(opts.input);
  const Matrix x = model_features(model, table, model.target);
  const auto params = predict(model, x, opts.threads);

  std::vector<std::vector<double>> rows;
  rows.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const NormalParams& p = params[i];
    try {
      const double point = model.log_transform ? point_prediction(p) : p.mu;
      rows.push_back({p.mu, p.sigma(), point, relative_std(p)});
    } catch (const OverflowError& e) {
      throw DataError("row " + std::to_string(i + 1) + ": " + e.what(), i + 1, 0);
    }
  }
  with_output(opts.output, out, [&](std::ostream& o) {
    write_rows(o, {"mu", "sigma", "point_prediction", "relative_std"}, rows);
  });
}

void cmd_evaluate(const EvaluateOptions& opts, std::ostream& out) {
  if (opts.model.empty() || opts.input.empty()) {
    throw ConfigError("evaluate needs --model and --input");
  }
  const BoostModel model = load_model_file(opts.model);
  const std::string target = opts.target.empty() ? model.target : opts.target;
  if (target.empty()) throw ConfigError("evaluate needs --target for this model");
  const CsvTable table = read_csv_file(opts.input);
  if (!table.has_column(target)) throw InvalidInput("target column '" + target + "' not found");
  const Matrix x = model_features(model, table, target);

  EvalInput input;
  input.params = predict(model, x, opts.threads);
  const std::size_t col = table.column_index(target);
  std::vector<double> y(table.cells.rows);
  for (std::size_t r = 0; r < y.size(); ++r) y[r] = table.cells.at(r, col);
  if (model.log_transform) {
    input.y_model_scale.resize(y.size());
    for (std::size_t r = 0; r < y.size(); ++r) {
      if (!(y[r] > 0.0)) {
        throw DataError("row " + std::to_string(r + 1) +
                            ": target must be positive for a log-trained model",
                        r + 1, col);
      }
      input.y_model_scale[r] = std::log(y[r]);
    }
    input.y_original_scale = std::move(y);
  } else {
    input.y_model_scale = std::move(y);
  }

  with_output(opts.output, out, [&](std::ostream& o) {
    o << "metric,value\n";
    o << "nll," << format_double(nll_mean(input)) << "\n";
    if (!input.y_original_scale) {
      // Point-error metrics and the calibration table live on the original
      // scale, which only log-trained models define.
      return;
    }
    o << "mape," << format_double(mape(input)) << "\n";
    o << "accuracy," << format_double(accuracy_within(input)) << "\n";
    o << "\n";
    const CalibrationReport report = calibration_report(input, opts.buckets);
    std::vector<std::vector<double>> rows;
    for (std::size_t b = 0; b < report.buckets.size(); ++b) {
      const auto& bk = report.buckets[b];
      rows.push_back({static_cast<double>(b + 1), bk.sigma_min, bk.sigma_max,
                      static_cast<double>(bk.count), bk.mape, bk.accuracy, bk.mean_nll});
    }
    write_rows(o, {"bucket", "sigma_min", "sigma_max", "count", "mape", "accuracy", "mean_nll"},
               rows);
  });
}

void cmd_importance(const ImportanceOptions& opts, std::ostream& out) {
  if (opts.model.empty()) throw ConfigError("importance needs --model");
  if (!(opts.alpha >= 0.0 && opts.alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
  const BoostModel model = load_model_file(opts.model);
  const ImportanceTable mean = feature_importance(model, ParamSet::mean);
  const ImportanceTable variance = feature_importance(model, ParamSet::variance);
  const auto ranking = combined_ranking(model, opts.alpha, opts.kind);

  with_output(opts.output, out, [&](std::ostream& o) {
    o << "feature,mean_importance,variance_importance,combined_score,"
         "mean_weight,mean_gain,mean_total_gain,"
         "variance_weight,variance_gain,variance_total_gain\n";
    for (const RankedFeature& r : ranking) {
      const auto& m = mean.features[r.index];
      const auto& v = variance.features[r.index];
      o << r.name << ',' << format_double(r.mean_share) << ','
        << format_double(r.variance_share) << ',' << format_double(r.score) << ',' << m.weight
        << ',' << format_double(m.gain) << ',' << format_double(m.total_gain) << ','
        << v.weight << ',' << format_double(v.gain) << ',' << format_double(v.total_gain)
        << '\n';
    }
  });
}

void cmd_synth(const SynthOptions& opts, std::ostream& log) {
  if (opts.output.empty()) throw ConfigError("synth needs --output");
  const SynthData synth = generate(opts.synth);
  const Dataset& data = synth.data;

  std::vector<std::string> header = data.feature_names;
  header.push_back("y");
  std::vector<std::vector<double>> rows(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto row = data.features.row(r);
    rows[r].assign(row.begin(), row.end());
    rows[r].push_back(data.targets[r]);
  }
  with_output(opts.output, log, [&](std::ostream& o) { write_rows(o, header, rows); });

  const std::string sigma_path =
      opts.sigma_output.empty() ? opts.output + ".sigma.csv" : opts.sigma_output;
  std::vector<std::vector<double>> sigma_rows;
  sigma_rows.reserve(synth.sigma.size());
  for (const double s : synth.sigma) sigma_rows.push_back({s});
  with_output(sigma_path, log, [&](std::ostream& o) { write_rows(o, {"sigma"}, sigma_rows); });
  log << "wrote " << data.rows() << " " << to_string(opts.synth.family) << " rows to "
      << opts.output << "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Natural gradient boosting for Normal predictive distributions"};
  app.require_subcommand(1);

  TrainOptions train_opts;
  PredictOptions predict_opts;
  EvaluateOptions eval_opts;
  ImportanceOptions imp_opts;
  SynthOptions synth_opts;
  std::string kind = "gain";
  std::string family = "heteroscedastic";

  auto* train_cmd = app.add_subcommand("train", "Fit a model on a labeled CSV");
  train_cmd->add_option("--input", train_opts.input, "Training CSV")->required();
  train_cmd->add_option("--output", train_opts.output, "Model file to write")->required();
  train_cmd->add_option("--trace", train_opts.trace, "Per-iteration NLL CSV");
  train_cmd->add_option("--target", train_opts.target, "Label column")->capture_default_str();
  train_cmd->add_flag("--log-transform", train_opts.log_transform, "Fit ln(target)");
  train_cmd->add_option("--iterations", train_opts.boost.iterations)->capture_default_str();
  train_cmd->add_option("--learning-rate", train_opts.boost.learning_rate)->capture_default_str();
  train_cmd->add_option("--max-depth", train_opts.boost.tree.max_depth)->capture_default_str();
  train_cmd->add_option("--max-bins", train_opts.boost.max_bins)->capture_default_str();
  train_cmd->add_option("--min-samples-leaf", train_opts.boost.tree.min_samples_leaf)
      ->capture_default_str();
  train_cmd->add_option("--line-search-halvings", train_opts.boost.line_search_halvings)
      ->capture_default_str();
  train_cmd->add_option("--threads", train_opts.boost.threads, "0 = all cores")
      ->capture_default_str();
  std::uint64_t unused_seed = 42;
  train_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; training is deterministic");

  auto* predict_cmd = app.add_subcommand("predict", "Predict mu and sigma per row");
  predict_cmd->add_option("--model", predict_opts.model)->required();
  predict_cmd->add_option("--input", predict_opts.input)->required();
  predict_cmd->add_option("--output", predict_opts.output, "Defaults to stdout");
  predict_cmd->add_option("--threads", predict_opts.threads)->capture_default_str();

  auto* eval_cmd = app.add_subcommand("evaluate", "MAPE, accuracy, NLL and calibration buckets");
  eval_cmd->add_option("--model", eval_opts.model)->required();
  eval_cmd->add_option("--input", eval_opts.input)->required();
  eval_cmd->add_option("--target", eval_opts.target, "Defaults to the training target");
  eval_cmd->add_option("--output", eval_opts.output, "Defaults to stdout");
  eval_cmd->add_option("--buckets", eval_opts.buckets)->capture_default_str();
  eval_cmd->add_option("--threads", eval_opts.threads)->capture_default_str();

  auto* imp_cmd = app.add_subcommand("importance", "Mean/variance feature importance");
  imp_cmd->add_option("--model", imp_opts.model)->required();
  imp_cmd->add_option("--output", imp_opts.output, "Defaults to stdout");
  imp_cmd->add_option("--alpha", imp_opts.alpha, "Weight of the mean set")->capture_default_str();
  imp_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"weight", "gain"}))
      ->capture_default_str();

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labeled CSV");
  synth_cmd->add_option("--output", synth_opts.output)->required();
  synth_cmd->add_option("--sigma-output", synth_opts.sigma_output, "True sigma sidecar");
  synth_cmd->add_option("--family", family)
      ->check(CLI::IsMember({"heteroscedastic", "homoscedastic", "lognormal"}))
      ->capture_default_str();
  synth_cmd->add_option("--n", synth_opts.synth.n)->capture_default_str();
  synth_cmd->add_option("--d", synth_opts.synth.d)->capture_default_str();
  synth_cmd->add_option("--noise", synth_opts.synth.noise, "Homoscedastic sigma")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_opts.synth.seed)->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sngbm");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*train_cmd) {
      cmd_train(train_opts, out);
    } else if (*predict_cmd) {
      cmd_predict(predict_opts, out);
    } else if (*eval_cmd) {
      cmd_evaluate(eval_opts, out);
    } else if (*imp_cmd) {
      imp_opts.kind = kind == "weight" ? ImportanceKind::weight : ImportanceKind::gain;
      cmd_importance(imp_opts, out);
    } else if (*synth_cmd) {
      synth_opts.synth.family = parse_synth_family(family);
      cmd_synth(synth_opts, out);
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const InvalidInput& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const LoadError& e) {
    err << "model error: " << e.what() << "\n";
    return kDataError;
  } catch (const OverflowError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace sngbm::cli
