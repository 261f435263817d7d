#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sngbm/boosting.hpp"
#include "sngbm/interpret.hpp"
#include "sngbm/metrics.hpp"
#include "sngbm/synth.hpp"

namespace sngbm::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kDataError = 2, kInternalError = 3 };

struct TrainOptions {
  std::string input;
  std::string output;
  std::string trace;  // defaults to <output>.trace.csv
  std::string target = "y";
  bool log_transform = false;
  BoostConfig boost{};
};

struct PredictOptions {
  std::string model;
  std::string input;
  std::string output;  // empty = stdout
  int threads = 1;
};

struct EvaluateOptions {
  std::string model;
  std::string input;
  std::string target;  // empty = the model's training target
  std::string output;
  int buckets = kDefaultBuckets;
  int threads = 1;
};

struct ImportanceOptions {
  std::string model;
  std::string output;
  double alpha = 0.5;
  ImportanceKind kind = ImportanceKind::gain;
};

struct SynthOptions {
  SynthConfig synth{};
  std::string output;
  std::string sigma_output;  // defaults to <output>.sigma.csv
};

TrainResult cmd_train(const TrainOptions& opts, std::ostream& log);
void cmd_predict(const PredictOptions& opts, std::ostream& out);
void cmd_evaluate(const EvaluateOptions& opts, std::ostream& out);
void cmd_importance(const ImportanceOptions& opts, std::ostream& out);
void cmd_synth(const SynthOptions& opts, std::ostream& log);

/// Parses argv, dispatches, and maps failures onto exit codes:
/// 1 usage, 2 data, 3 internal.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sngbm::cli
