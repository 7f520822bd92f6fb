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

#ifndef DLM_DATASET_H_
#define DLM_DATASET_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlm/common.h"

namespace dlm {

// One training instance: question id, five normalized feature values and an
// optional d/nd label.
struct TrainingRecord {
  std::string id;
  FeatureArray features{};
  std::optional<Verdict> label;

  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

struct LabeledRecord {
  std::string id;
  FeatureArray features{};
  Verdict label = Verdict::kNotDifficult;
};

struct LabeledDataset {
  LearnerCategory category = LearnerCategory::kExpert;
  std::vector<LabeledRecord> records;

  std::size_t size() const { return records.size(); }
  std::size_t count(Verdict v) const;
  bool has_both_labels() const { return count(Verdict::kDifficult) > 0 && count(Verdict::kNotDifficult) > 0; }
};

// Every record must carry a label. Throws InputError otherwise or when
// `records` is empty.
LabeledDataset make_labeled(LearnerCategory category, const std::vector<TrainingRecord>& records);

// Line-oriented block format:
//   Item identifier: dsa_1
//   Popularity: 0.231
//   ...
//   Difficulty: d
// Blocks are separated by a blank line; values carry 3 decimals and the
// Difficulty field is left empty for unlabeled records.
void write_records(std::ostream& out, const std::vector<TrainingRecord>& records);

// CSV with the header item,popularity,selectivity_ex,selectivity_bg,coherence,specificity,difficulty
void write_records_csv(std::ostream& out, const std::vector<TrainingRecord>& records);

// Reads either format (detected from the first non-blank line).
std::vector<TrainingRecord> read_records(std::istream& in);

}  // namespace dlm

#endif  // DLM_DATASET_H_
