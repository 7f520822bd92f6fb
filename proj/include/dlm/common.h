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

#ifndef DLM_COMMON_H_
#define DLM_COMMON_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dlm {

// Malformed or inconsistent user input. The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(message + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Violated internal invariant. The CLI maps these to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The five question features, in their fixed tie-break order.
enum class Feature : std::uint8_t {
  kPopularity = 0,
  kSelectivityEx = 1,
  kSelectivityBg = 2,
  kCoherence = 3,
  kSpecificity = 4,
};

inline constexpr std::size_t kFeatureCount = 5;
inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::kPopularity, Feature::kSelectivityEx, Feature::kSelectivityBg,
    Feature::kCoherence, Feature::kSpecificity};

using FeatureArray = std::array<double, kFeatureCount>;

inline constexpr std::size_t index_of(Feature f) {
  return static_cast<std::size_t>(f);
}

// snake_case identifier used in CSV headers, masks and model files.
std::string_view feature_key(Feature f);
// Field name used by the line-oriented training record format.
std::string_view feature_record_name(Feature f);
std::optional<Feature> feature_from_key(std::string_view key);

enum class LearnerCategory : std::uint8_t {
  kExpert = 0,
  kIntermediate = 1,
  kBeginner = 2,
};

inline constexpr std::array<LearnerCategory, 3> kAllCategories = {
    LearnerCategory::kExpert, LearnerCategory::kIntermediate,
    LearnerCategory::kBeginner};

std::string_view category_name(LearnerCategory c);
std::optional<LearnerCategory> category_from_name(std::string_view name);

// Dichotomous per-category verdict: difficult (d) or not difficult (nd).
enum class Verdict : std::uint8_t { kDifficult, kNotDifficult };

std::string_view verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(std::string_view name);

// Seeded generator shared by every stochastic step. mt19937_64 has a fully
// specified output sequence; the helpers below avoid the
// implementation-defined standard distributions.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

template <typename Container>
void seeded_shuffle(Container& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace dlm

#endif  // DLM_COMMON_H_
