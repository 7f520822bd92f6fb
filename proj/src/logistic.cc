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

#include "dlm/logistic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "dlm/kernels.h"

namespace dlm {
namespace {

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double logistic(double z) {
  double e = std::exp(-std::fabs(z));
  return z >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
}

void check_trainable(const LabeledDataset& d, const FeatureMask& mask) {
  if (d.records.empty()) throw InputError("empty training set");
  if (!d.has_both_labels()) {
    throw InputError("training set for " + std::string(category_name(d.category)) +
                     " has a single class");
  }
  if (mask_size(mask) == 0) throw InputError("empty feature mask");
}

// Masked feature columns and 0/1 targets laid out for the kernels.
struct Design {
  std::vector<std::size_t> active;
  std::vector<std::vector<double>> columns;
  std::vector<double> y;
};

Design design_of(const LabeledDataset& d, const FeatureMask& mask) {
  Design x;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (mask[f]) x.active.push_back(f);
  }
  x.columns.assign(x.active.size(), std::vector<double>(d.size()));
  x.y.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const LabeledRecord& r = d.records[i];
    for (std::size_t a = 0; a < x.active.size(); ++a) x.columns[a][i] = r.features[x.active[a]];
    x.y[i] = r.label == Verdict::kDifficult ? 1.0 : 0.0;
  }
  return x;
}

void linear_predictor(const std::vector<std::vector<double>>& columns, const double* w, double b,
                      std::vector<double>& z) {
  std::fill(z.begin(), z.end(), b);
  for (std::size_t a = 0; a < columns.size(); ++a) kernels::axpy(w[a], columns[a], z);
}

double regularized_loss(const std::vector<double>& z, const std::vector<double>& y, const double* w,
                        std::size_t dim, double l2) {
  double penalty = 0.0;
  for (std::size_t a = 0; a < dim; ++a) penalty += w[a] * w[a];
  return kernels::log_loss(z, y) / static_cast<double>(y.size()) + 0.5 * l2 * penalty;
}

LabeledDataset subset(const LabeledDataset& d, const std::vector<std::size_t>& rows) {
  LabeledDataset s;
  s.category = d.category;
  s.records.reserve(rows.size());
  for (std::size_t i : rows) s.records.push_back(d.records[i]);
  return s;
}

}  // namespace

FeatureMask all_features_mask() {
  FeatureMask m;
  m.fill(true);
  return m;
}

FeatureMask mask_without(Feature dropped) {
  FeatureMask m = all_features_mask();
  m[index_of(dropped)] = false;
  return m;
}

std::size_t mask_size(const FeatureMask& mask) {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

std::string format_mask(const FeatureMask& mask) {
  std::string out;
  for (Feature f : kAllFeatures) {
    if (!mask[index_of(f)]) continue;
    if (!out.empty()) out += ',';
    out += feature_key(f);
  }
  return out;
}

FeatureMask parse_mask(std::string_view text) {
  FeatureMask m{};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view name = text.substr(start, end - start);
    if (!name.empty()) {
      std::optional<Feature> f = feature_from_key(name);
      if (!f) throw InputError("unknown feature '" + std::string(name) + "'");
      if (m[index_of(*f)]) throw InputError("feature '" + std::string(name) + "' listed twice");
      m[index_of(*f)] = true;
    }
    start = end + 1;
  }
  return m;
}

std::map<LearnerCategory, FeatureMask> default_masks() {
  return {{LearnerCategory::kExpert, mask_without(Feature::kSelectivityBg)},
          {LearnerCategory::kIntermediate, mask_without(Feature::kSelectivityEx)},
          {LearnerCategory::kBeginner, mask_without(Feature::kSelectivityEx)}};
}

LogisticObjective::LogisticObjective(const LabeledDataset& d, const FeatureMask& mask, double l2)
    : l2_(l2) {
  if (d.records.empty()) throw InputError("empty training set");
  Design x = design_of(d, mask);
  active_ = std::move(x.active);
  columns_ = std::move(x.columns);
  y_ = std::move(x.y);
}

void LogisticObjective::linear(const std::vector<double>& params, std::vector<double>& z) const {
  if (params.size() != active_.size() + 1) throw InvariantError("parameter vector has wrong size");
  z.resize(y_.size());
  linear_predictor(columns_, params.data(), params.back(), z);
}

double LogisticObjective::loss(const std::vector<double>& params) const {
  std::vector<double> z;
  linear(params, z);
  return regularized_loss(z, y_, params.data(), active_.size(), l2_);
}

std::vector<double> LogisticObjective::gradient(const std::vector<double>& params) const {
  std::vector<double> z;
  linear(params, z);
  std::vector<double> residual(z.size());
  kernels::sigmoid_residual(z, y_, residual);
  const double n = static_cast<double>(y_.size());
  std::vector<double> g(params.size());
  for (std::size_t a = 0; a < active_.size(); ++a) {
    g[a] = kernels::dot(columns_[a], residual) / n + l2_ * params[a];
  }
  g.back() = kernels::sum(residual) / n;
  return g;
}

LogisticModel train(const LabeledDataset& d, const FeatureMask& mask, const Hyperparameters& hyper,
                    std::vector<double>* loss_history) {
  check_trainable(d, mask);
  if (!(hyper.learning_rate > 0.0) || !std::isfinite(hyper.learning_rate)) {
    throw InputError("learning rate must be positive");
  }
  if (!(hyper.l2 >= 0.0)) throw InputError("l2 strength must be non-negative");

  const Design x = design_of(d, mask);
  const std::size_t dim = x.active.size();
  const double n = static_cast<double>(d.size());
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> z(d.size());
  std::vector<double> residual(d.size());

  if (loss_history != nullptr) {
    loss_history->clear();
    loss_history->reserve(hyper.epochs + 1);
  }
  for (std::size_t epoch = 0; epoch <= hyper.epochs; ++epoch) {
    linear_predictor(x.columns, w.data(), b, z);
    if (loss_history != nullptr) loss_history->push_back(regularized_loss(z, x.y, w.data(), dim, hyper.l2));
    if (epoch == hyper.epochs) break;
    kernels::sigmoid_residual(z, x.y, residual);
    for (std::size_t a = 0; a < dim; ++a) {
      double g = kernels::dot(x.columns[a], residual) / n + hyper.l2 * w[a];
      w[a] -= hyper.learning_rate * g;
    }
    b -= hyper.learning_rate * kernels::sum(residual) / n;
    if (!std::isfinite(b)) throw InputError("training diverged; lower the learning rate");
  }

  LogisticModel m;
  m.category = d.category;
  m.mask = mask;
  for (std::size_t a = 0; a < dim; ++a) m.weights[x.active[a]] = w[a];
  m.bias = b;
  m.meta = {hyper.epochs, hyper.learning_rate, hyper.l2, hyper.seed,
            regularized_loss(z, x.y, w.data(), dim, hyper.l2)};
  if (!std::isfinite(m.meta.final_loss) ||
      std::any_of(w.begin(), w.end(), [](double v) { return !std::isfinite(v); })) {
    throw InputError("training diverged; lower the learning rate");
  }
  return m;
}

Prediction predict(const LogisticModel& m, const FeatureArray& features) {
  double z = m.bias;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (m.mask[f]) z += m.weights[f] * features[f];
  }
  double p = logistic(z);
  return {p, p >= 0.5 ? Verdict::kDifficult : Verdict::kNotDifficult};
}

CvReport cross_validate(const LabeledDataset& d, const FeatureMask& mask, const Hyperparameters& hyper,
                        std::size_t folds) {
  if (folds < 2) throw InputError("cross-validation needs at least 2 folds");
  if (d.size() < folds) {
    throw InputError("cross-validation needs at least " + std::to_string(folds) + " records");
  }
  check_trainable(d, mask);

  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (d.records[i].label == Verdict::kDifficult ? positives : negatives).push_back(i);
  }
  Rng rng(hyper.seed);
  seeded_shuffle(positives, rng);
  seeded_shuffle(negatives, rng);
  std::vector<std::vector<std::size_t>> fold_rows(folds);
  std::size_t slot = 0;
  for (const auto* group : {&positives, &negatives}) {
    for (std::size_t i : *group) fold_rows[slot++ % folds].push_back(i);
  }

  CvReport report;
  for (std::size_t k = 0; k < folds; ++k) {
    std::vector<std::size_t> train_rows;
    for (std::size_t j = 0; j < folds; ++j) {
      if (j != k) train_rows.insert(train_rows.end(), fold_rows[j].begin(), fold_rows[j].end());
    }
    std::sort(train_rows.begin(), train_rows.end());
    LabeledDataset train_set = subset(d, train_rows);
    if (!train_set.has_both_labels()) {
      throw InputError("fold " + std::to_string(k + 1) + " leaves a single class for training");
    }
    LogisticModel m = train(train_set, mask, hyper);
    std::size_t correct = 0;
    for (std::size_t i : fold_rows[k]) {
      const LabeledRecord& r = d.records[i];
      Verdict v = predict(m, r.features).label;
      bool actual_d = r.label == Verdict::kDifficult;
      bool predicted_d = v == Verdict::kDifficult;
      if (predicted_d == actual_d) ++correct;
      if (predicted_d && actual_d) ++report.tp;
      if (predicted_d && !actual_d) ++report.fp;
      if (!predicted_d && !actual_d) ++report.tn;
      if (!predicted_d && actual_d) ++report.fn;
    }
    report.fold_accuracy.push_back(static_cast<double>(correct) /
                                   static_cast<double>(fold_rows[k].size()));
  }
  double total = 0.0;
  for (double a : report.fold_accuracy) total += a;
  report.mean_accuracy = 100.0 * total / static_cast<double>(folds);
  return report;
}

void save_model(std::ostream& out, const LogisticModel& m) {
  out << "# dlm logistic model\n";
  out << "category " << category_name(m.category) << '\n';
  out << "mask " << format_mask(m.mask) << '\n';
  for (Feature f : kAllFeatures) {
    if (m.mask[index_of(f)]) out << "weight." << feature_key(f) << ' ' << g12(m.weights[index_of(f)]) << '\n';
  }
  out << "bias " << g12(m.bias) << '\n';
  out << "learning_rate " << g12(m.meta.learning_rate) << '\n';
  out << "epochs " << m.meta.epochs << '\n';
  out << "l2 " << g12(m.meta.l2) << '\n';
  out << "seed " << m.meta.seed << '\n';
  out << "final_loss " << g12(m.meta.final_loss) << '\n';
}

LogisticModel load_model(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::size_t space = line.find(' ');
    std::string key = line.substr(0, space);
    std::string value = space == std::string::npos ? "" : line.substr(space + 1);
    if (!fields.emplace(key, value).second) throw ParseError("duplicate key '" + key + "'", line_no, 1);
  }
  auto take = [&](const std::string& key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw InputError("model file lacks '" + key + "'");
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  auto real = [&](const std::string& key) {
    std::string text = take(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
      throw InputError("model field '" + key + "' is not a finite number: " + text);
    }
    return v;
  };
  auto integer = [&](const std::string& key) {
    std::string text = take(key);
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("model field '" + key + "' is not a non-negative integer: " + text);
    }
    return static_cast<std::uint64_t>(std::stoull(text));
  };

  LogisticModel m;
  std::string category = take("category");
  std::optional<LearnerCategory> c = category_from_name(category);
  if (!c) throw InputError("unknown learner category '" + category + "'");
  m.category = *c;
  m.mask = parse_mask(take("mask"));
  if (mask_size(m.mask) == 0) throw InputError("model has an empty feature mask");
  for (Feature f : kAllFeatures) {
    if (m.mask[index_of(f)]) m.weights[index_of(f)] = real("weight." + std::string(feature_key(f)));
  }
  m.bias = real("bias");
  m.meta.learning_rate = real("learning_rate");
  m.meta.epochs = static_cast<std::size_t>(integer("epochs"));
  m.meta.l2 = real("l2");
  m.meta.seed = integer("seed");
  m.meta.final_loss = real("final_loss");
  if (!fields.empty()) throw InputError("unexpected model field '" + fields.begin()->first + "'");
  return m;
}

}  // namespace dlm
