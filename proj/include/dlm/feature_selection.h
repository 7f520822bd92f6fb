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

#ifndef DLM_FEATURE_SELECTION_H_
#define DLM_FEATURE_SELECTION_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dlm/common.h"
#include "dlm/dataset.h"

namespace dlm {

enum class RankingMethod { kInfoGain, kReliefF, kCorrelation };

inline constexpr std::array<RankingMethod, 3> kAllRankingMethods = {
    RankingMethod::kInfoGain, RankingMethod::kReliefF, RankingMethod::kCorrelation};

std::string_view ranking_method_name(RankingMethod m);  // info-gain, relieff, correlation

struct FeatureRanking {
  RankingMethod method = RankingMethod::kInfoGain;
  FeatureArray scores{};
  // Descending score; equal scores keep the fixed feature order.
  std::array<Feature, kFeatureCount> order = kAllFeatures;
  // Features whose score was forced to 0 (zero variance, single class).
  std::array<bool, kFeatureCount> degenerate{};

  double score(Feature f) const { return scores[index_of(f)]; }
  Feature last() const { return order.back(); }
};

// Sorts features by descending score with the fixed tie-break.
std::array<Feature, kFeatureCount> order_by_score(const FeatureArray& scores);

using FeatureRange = std::pair<double, double>;

struct InfoGainOptions {
  std::size_t bins = 10;
  // Per-feature discretization range; [0, 1] when absent.
  std::optional<std::array<FeatureRange, kFeatureCount>> ranges;
};

// H(label) - H(label | binned feature), in bits. Requires >= 2 records; a
// single-class dataset scores 0 everywhere.
FeatureRanking info_gain(const LabeledDataset& d, const InfoGainOptions& options = {});

struct ReliefOptions {
  std::size_t k = 10;
  std::size_t m = 0;  // 0 or >= size: every record, in dataset order
  std::uint64_t seed = 42;
};

// ReliefF weights with range-normalized Manhattan distance. Neighbours are
// ordered by (distance rounded to 1e-9, feature values), so the result does not depend on
// record order when every record is sampled. Throws InputError when a class
// has fewer than k members or the dataset is single-class.
FeatureRanking relieff(const LabeledDataset& d, const ReliefOptions& options = {});

// |point-biserial correlation| between each feature and the label (d = 1).
// Zero-variance features score 0 and are marked degenerate.
FeatureRanking correlation_score(const LabeledDataset& d);

struct FeatureSelection {
  std::array<FeatureRanking, 3> rankings;  // kAllRankingMethods order
  std::optional<Feature> least_influential;
};

// Runs the three rankings. ReliefF's k is reduced to fit the smaller class
// (at least one neighbour excluding the record itself).
FeatureSelection select_features(const LabeledDataset& d, const ReliefOptions& relief = {});

// The feature ranked last by at least two of the rankings.
std::optional<Feature> majority_last(const std::array<FeatureRanking, 3>& rankings);

std::optional<Feature> least_influential(const LabeledDataset& d);

struct CategoryRankings {
  LearnerCategory category = LearnerCategory::kExpert;
  FeatureSelection selection;
};

// Methods x features matrix per category, aligned text. The least
// influential feature of each category is marked with '*'.
void write_ranking_table(std::ostream& out, const std::vector<CategoryRankings>& rows);
// category,method,<five feature keys>,last
void write_ranking_csv(std::ostream& out, const std::vector<CategoryRankings>& rows);

}  // namespace dlm

#endif  // DLM_FEATURE_SELECTION_H_
