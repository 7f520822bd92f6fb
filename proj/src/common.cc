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

#include "dlm/common.h"

namespace dlm {

std::string_view feature_key(Feature f) {
  switch (f) {
    case Feature::kPopularity: return "popularity";
    case Feature::kSelectivityEx: return "selectivity_ex";
    case Feature::kSelectivityBg: return "selectivity_bg";
    case Feature::kCoherence: return "coherence";
    case Feature::kSpecificity: return "specificity";
  }
  throw InvariantError("unknown feature");
}

std::string_view feature_record_name(Feature f) {
  switch (f) {
    case Feature::kPopularity: return "Popularity";
    case Feature::kSelectivityEx: return "Selectivity_Ex";
    case Feature::kSelectivityBg: return "Selectivity_Bg";
    case Feature::kCoherence: return "Coherence";
    case Feature::kSpecificity: return "Specificity";
  }
  throw InvariantError("unknown feature");
}

std::optional<Feature> feature_from_key(std::string_view key) {
  for (Feature f : kAllFeatures) {
    if (feature_key(f) == key || feature_record_name(f) == key) return f;
  }
  return std::nullopt;
}

std::string_view category_name(LearnerCategory c) {
  switch (c) {
    case LearnerCategory::kExpert: return "expert";
    case LearnerCategory::kIntermediate: return "intermediate";
    case LearnerCategory::kBeginner: return "beginner";
  }
  throw InvariantError("unknown learner category");
}

std::optional<LearnerCategory> category_from_name(std::string_view name) {
  for (LearnerCategory c : kAllCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::kDifficult ? "d" : "nd";
}

std::optional<Verdict> verdict_from_name(std::string_view name) {
  if (name == "d") return Verdict::kDifficult;
  if (name == "nd") return Verdict::kNotDifficult;
  return std::nullopt;
}

}  // namespace dlm
