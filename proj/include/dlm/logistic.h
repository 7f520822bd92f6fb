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

#ifndef DLM_LOGISTIC_H_
#define DLM_LOGISTIC_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dlm/common.h"
#include "dlm/dataset.h"

namespace dlm {

// Which of the five features a model uses.
using FeatureMask = std::array<bool, kFeatureCount>;

FeatureMask all_features_mask();
FeatureMask mask_without(Feature dropped);
std::size_t mask_size(const FeatureMask& mask);
// Comma-separated feature keys in fixed order; "" for the empty mask.
std::string format_mask(const FeatureMask& mask);
FeatureMask parse_mask(std::string_view text);

// Expert drops selectivity_bg; intermediate and beginner drop selectivity_ex.
std::map<LearnerCategory, FeatureMask> default_masks();

struct Hyperparameters {
  double learning_rate = 0.1;
  std::size_t epochs = 5000;
  double l2 = 1e-4;
  std::uint64_t seed = 42;  // fold shuffling in cross-validation
};

struct TrainingMeta {
  std::size_t epochs = 0;
  double learning_rate = 0.0;
  double l2 = 0.0;
  std::uint64_t seed = 0;
  double final_loss = 0.0;
};

struct LogisticModel {
  LearnerCategory category = LearnerCategory::kExpert;
  FeatureMask mask{};
  FeatureArray weights{};  // zero outside the mask
  double bias = 0.0;
  TrainingMeta meta;
};

struct Prediction {
  double probability = 0.5;
  Verdict label = Verdict::kDifficult;
};

// Mean negative log-likelihood of label d plus (l2 / 2) * |w|^2 over the
// masked features; the bias is not regularized.
class LogisticObjective {
 public:
  LogisticObjective(const LabeledDataset& d, const FeatureMask& mask, double l2);

  std::size_t dimension() const { return active_.size(); }
  // `params` holds the masked weights in fixed feature order, then the bias.
  double loss(const std::vector<double>& params) const;
  std::vector<double> gradient(const std::vector<double>& params) const;

 private:
  void linear(const std::vector<double>& params, std::vector<double>& z) const;

  std::vector<std::size_t> active_;
  std::vector<std::vector<double>> columns_;
  std::vector<double> y_;
  double l2_;
};

// Full-batch gradient descent from zero. When `loss_history` is given it
// receives epochs + 1 values: the loss before the first step and after each
// step. Throws InputError on single-class data, an empty mask or divergence.
LogisticModel train(const LabeledDataset& d, const FeatureMask& mask, const Hyperparameters& hyper,
                    std::vector<double>* loss_history = nullptr);

// Label d iff probability >= 0.5.
Prediction predict(const LogisticModel& m, const FeatureArray& features);

struct CvReport {
  std::vector<double> fold_accuracy;  // fractions in [0, 1], fold order
  double mean_accuracy = 0.0;         // percentage
  std::size_t tp = 0;                 // positive class is d
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  friend bool operator==(const CvReport&, const CvReport&) = default;
};

// Stratified k-fold: each class is shuffled with hyper.seed and dealt
// round-robin. Throws InputError when |d| < folds or a training split
// loses a class.
CvReport cross_validate(const LabeledDataset& d, const FeatureMask& mask, const Hyperparameters& hyper,
                        std::size_t folds = 10);

// Plain key/value text; reals carry 12 significant digits.
void save_model(std::ostream& out, const LogisticModel& m);
LogisticModel load_model(std::istream& in);

}  // namespace dlm

#endif  // DLM_LOGISTIC_H_
