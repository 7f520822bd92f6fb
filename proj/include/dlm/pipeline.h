// Copyright 2026 The DLM Authors
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

#ifndef DLM_PIPELINE_H_
#define DLM_PIPELINE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlm/dataset.h"
#include "dlm/feature_selection.h"
#include "dlm/irt.h"
#include "dlm/logistic.h"
#include "dlm/question.h"
#include "dlm/rdf_io.h"

namespace dlm {

// Everything a command reads. Commands are pure functions of the config and
// the files it names; the config is written next to the outputs as
// <command>.config.json.
struct RunConfig {
  std::optional<std::filesystem::path> ontology;
  std::optional<RdfFormat> format;
  std::vector<std::string> patterns;  // empty: every built-in pattern
  std::size_t limit = 100000;         // per pattern
  std::uint64_t seed = 42;
  ThetaMap thetas = category_thetas();
  Hyperparameters hyper;
  std::size_t folds = 10;
  bool all_features = false;  // train on all five features instead of masks
  std::filesystem::path out = ".";

  // Named input files: questions, features, expert, intermediate, beginner,
  // masks, models, predictions, gold, responses.
  std::map<std::string, std::filesystem::path> inputs;
};

std::string config_json(const RunConfig& config, std::string_view command);

struct GenerateResult {
  std::vector<Question> questions;
  std::vector<std::pair<std::string, std::size_t>> per_pattern;
};

// Writes questions.tsv.
GenerateResult cmd_generate(const RunConfig& config, std::ostream& log);

// Reads the questions input (or generates when absent) and writes
// features.txt and features.csv with empty labels.
std::vector<TrainingRecord> cmd_featurize(const RunConfig& config, std::ostream& log);

// Reads the labeled expert/intermediate/beginner inputs present and writes
// rankings.txt, rankings.csv and masks.txt.
std::vector<CategoryRankings> cmd_rank_features(const RunConfig& config, std::ostream& log);

struct TrainResult {
  std::map<LearnerCategory, LogisticModel> models;
  std::map<LearnerCategory, CvReport> cv;
  std::map<LearnerCategory, std::string> mask_source;
};

// Masks come from the masks input when given, else the defaults (or all
// five with all_features). Writes model_<category>.txt and cv_report.txt.
TrainResult cmd_train(const RunConfig& config, std::ostream& log);

// "<category> <comma-separated features>" per line.
void write_masks(std::ostream& out, const std::map<LearnerCategory, FeatureMask>& masks);
std::map<LearnerCategory, FeatureMask> read_masks(std::istream& in);

struct PredictionRow {
  std::string item;
  std::array<Prediction, 3> per_category;  // kAllCategories order
  DifficultyLevel level = DifficultyLevel::kNonClassifiable;
};

struct PredictResult {
  std::vector<PredictionRow> rows;
  LevelTally tally;
};

// Loads model_<category>.txt from the models directory and scores the
// features input (or questions + ontology). Writes predictions.csv and
// levels.txt.
PredictResult cmd_predict(const RunConfig& config, std::ostream& log);

void write_predictions(std::ostream& out, const std::vector<PredictionRow>& rows);

// Writes calibration.csv and levels.txt from the responses input.
std::vector<ItemCalibration> cmd_calibrate(const RunConfig& config, std::ostream& log);

struct ReportSummary {
  std::size_t total = 0;
  std::size_t matches = 0;
  std::size_t non_classifiable = 0;
  // [gold][predicted], kAllLevels order.
  std::array<std::array<std::size_t, 4>, 4> confusion{};

  double match_pct() const;
};

// Reads item -> level from a CSV with `item` and `level` columns.
std::map<std::string, DifficultyLevel> read_levels(std::istream& in);

ReportSummary compare_levels(const std::map<std::string, DifficultyLevel>& predicted,
                             const std::map<std::string, DifficultyLevel>& gold);
void write_report(std::ostream& out, const ReportSummary& summary);

// Joins the predictions and gold inputs by item id and writes report.txt.
ReportSummary cmd_report(const RunConfig& config, std::ostream& log);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvariantError = 2;

// Runs `body` and maps its outcome to an exit code: InputError and
// filesystem errors give 1, InvariantError and any other exception 2. The
// message goes to `err`.
int run_guarded(const std::function<void()>& body, std::ostream& err);

}  // namespace dlm

#endif  // DLM_PIPELINE_H_
