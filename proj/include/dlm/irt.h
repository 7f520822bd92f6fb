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

#ifndef DLM_IRT_H_
#define DLM_IRT_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlm/common.h"

namespace dlm {

inline constexpr double kTraitMin = -1.5;
inline constexpr double kTraitMax = 1.5;

// Probability of a correct response under the one-parameter logistic model.
double p_correct(double theta, double alpha);

// theta - ln(p / (1 - p)). Throws InputError unless 0 < p < 1.
double estimate_alpha(double theta, double p);

// Proportion correct; (c + 0.5) / (n + 1) when every or no response is
// correct. Throws InputError on an empty list.
double empirical_p(const std::vector<bool>& responses);
double empirical_p(std::size_t correct, std::size_t total);

// d iff p <= 0.5.
Verdict verdict_from_p(double p);

struct CategoryVerdicts {
  Verdict expert = Verdict::kDifficult;
  Verdict intermediate = Verdict::kDifficult;
  Verdict beginner = Verdict::kDifficult;

  Verdict& operator[](LearnerCategory c);
  Verdict operator[](LearnerCategory c) const;

  friend bool operator==(const CategoryVerdicts&, const CategoryVerdicts&) = default;
};

// All eight verdict combinations, expert varying slowest.
std::array<CategoryVerdicts, 8> all_verdict_combinations();

enum class DifficultyLevel { kHigh, kMedium, kLow, kNonClassifiable };

inline constexpr std::array<DifficultyLevel, 4> kAllLevels = {
    DifficultyLevel::kHigh, DifficultyLevel::kMedium, DifficultyLevel::kLow,
    DifficultyLevel::kNonClassifiable};

std::string_view level_name(DifficultyLevel level);  // high, medium, low, non-classifiable
std::optional<DifficultyLevel> level_from_name(std::string_view name);

// (d,d,d) high, (nd,d,d) medium, (nd,nd,d) low, anything else
// non-classifiable.
DifficultyLevel assign_difficulty(const CategoryVerdicts& v);

struct TraitLevel {
  double theta = 0.0;
  LearnerCategory category = LearnerCategory::kIntermediate;
};

// Throws InputError unless theta lies in [-1.5, 1.5].
TraitLevel make_trait_level(double theta, LearnerCategory category);

// One Bernoulli draw per learner with success probability p_correct.
std::vector<bool> simulate_responses(const std::vector<TraitLevel>& cohort, double alpha,
                                     std::uint64_t seed);

using ThetaMap = std::map<LearnerCategory, double>;

// expert 1.25, intermediate 0, beginner -1.25.
ThetaMap category_thetas();

// "expert=1.25,intermediate=0,beginner=-1.25"; omitted categories keep
// their defaults. Throws InputError on unknown names or out-of-range values.
ThetaMap parse_theta_map(std::string_view text);
std::string format_theta_map(const ThetaMap& thetas);

// Verdicts implied by a single item difficulty: the item is difficult for a
// category when alpha reaches the lower edge of that category's band. Band
// edges lie midway between adjacent category thetas; the lowest band extends
// the same half-width below the beginner theta. Requires strictly ordered
// thetas (expert > intermediate > beginner).
CategoryVerdicts verdicts_from_alpha(double alpha, const ThetaMap& thetas);

struct Response {
  std::string item;
  std::string learner;
  LearnerCategory category = LearnerCategory::kIntermediate;
  bool correct = false;
};

// CSV with header item,learner,category,correct (correct is 0 or 1).
std::vector<Response> read_responses(std::istream& in);
void write_responses(std::ostream& out, const std::vector<Response>& responses);

struct CategoryCalibration {
  std::size_t total = 0;
  std::size_t correct = 0;
  double p = 0.0;      // smoothed proportion; meaningless when total == 0
  double alpha = 0.0;  // theta - logit(p)
  Verdict verdict = Verdict::kDifficult;
};

struct ItemCalibration {
  std::string item;
  std::array<CategoryCalibration, 3> categories;  // kAllCategories order
  bool complete = false;  // every category answered at least once
  // Set only when complete.
  double alpha = 0.0;  // information-weighted mean of the per-category alphas
  DifficultyLevel cohort_level = DifficultyLevel::kNonClassifiable;  // from per-cohort p
  DifficultyLevel level = DifficultyLevel::kNonClassifiable;         // from alpha
};

// Groups responses by item (sorted by id). Throws InputError when a learner
// answers the same item twice or appears under two categories.
std::vector<ItemCalibration> calibrate(const std::vector<Response>& responses,
                                       const ThetaMap& thetas);

void write_calibration(std::ostream& out, const std::vector<ItemCalibration>& items);

struct LevelTally {
  std::array<std::size_t, 4> counts{};  // kAllLevels order

  void add(DifficultyLevel level) { ++counts[static_cast<std::size_t>(level)]; }
  std::size_t total() const;
  std::size_t classifiable() const;
  std::size_t non_classifiable() const { return counts[3]; }
  double classifiable_pct() const;
  double non_classifiable_pct() const;
};

// Percentage table: one row per level plus classifiable / non-classifiable.
void write_level_tally(std::ostream& out, const LevelTally& tally);

}  // namespace dlm

#endif  // DLM_IRT_H_
