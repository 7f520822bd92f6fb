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

#include "dlm/feature_selection.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "dlm/kernels.h"

namespace dlm {
namespace {

using Column = std::vector<double>;

std::array<Column, kFeatureCount> columns_of(const LabeledDataset& d) {
  std::array<Column, kFeatureCount> cols;
  for (auto& c : cols) c.reserve(d.size());
  for (const LabeledRecord& r : d.records) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) cols[f].push_back(r.features[f]);
  }
  return cols;
}

double entropy(std::size_t pos, std::size_t neg) {
  double n = static_cast<double>(pos + neg);
  double h = 0.0;
  for (std::size_t c : {pos, neg}) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

FeatureRanking make_ranking(RankingMethod method, const FeatureArray& scores,
                            const std::array<bool, kFeatureCount>& degenerate) {
  FeatureRanking r;
  r.method = method;
  r.scores = scores;
  r.order = order_by_score(scores);
  r.degenerate = degenerate;
  return r;
}

void require_records(const LabeledDataset& d, std::size_t at_least) {
  if (d.size() < at_least) {
    throw InputError("feature ranking needs at least " + std::to_string(at_least) + " records, got " +
                     std::to_string(d.size()));
  }
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string_view ranking_method_name(RankingMethod m) {
  switch (m) {
    case RankingMethod::kInfoGain: return "info-gain";
    case RankingMethod::kReliefF: return "relieff";
    case RankingMethod::kCorrelation: return "correlation";
  }
  throw InvariantError("unknown ranking method");
}

std::array<Feature, kFeatureCount> order_by_score(const FeatureArray& scores) {
  std::array<Feature, kFeatureCount> order = kAllFeatures;
  std::stable_sort(order.begin(), order.end(), [&](Feature a, Feature b) {
    return scores[index_of(a)] > scores[index_of(b)];
  });
  return order;
}

FeatureRanking info_gain(const LabeledDataset& d, const InfoGainOptions& options) {
  require_records(d, 2);
  if (options.bins == 0) throw InputError("info gain needs at least one bin");
  FeatureArray scores{};
  std::array<bool, kFeatureCount> degenerate{};
  const std::size_t pos = d.count(Verdict::kDifficult);
  const std::size_t neg = d.size() - pos;
  if (pos == 0 || neg == 0) {
    degenerate.fill(true);
    return make_ranking(RankingMethod::kInfoGain, scores, degenerate);
  }
  const double h = entropy(pos, neg);
  const double n = static_cast<double>(d.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    double lo = 0.0;
    double hi = 1.0;
    if (options.ranges) std::tie(lo, hi) = (*options.ranges)[f];
    if (lo > hi) std::swap(lo, hi);
    if (!(hi > lo)) throw InputError("empty discretization range for " + std::string(feature_key(kAllFeatures[f])));
    std::vector<std::array<std::size_t, 2>> counts(options.bins, {0, 0});
    for (const LabeledRecord& r : d.records) {
      double t = (r.features[f] - lo) / (hi - lo) * static_cast<double>(options.bins);
      auto bin = static_cast<std::ptrdiff_t>(std::floor(t));
      bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(options.bins) - 1);
      ++counts[static_cast<std::size_t>(bin)][r.label == Verdict::kDifficult ? 0 : 1];
    }
    double conditional = 0.0;
    for (const auto& [p, q] : counts) {
      if (p + q == 0) continue;
      conditional += static_cast<double>(p + q) / n * entropy(p, q);
    }
    scores[f] = std::max(0.0, h - conditional);
  }
  return make_ranking(RankingMethod::kInfoGain, scores, degenerate);
}

FeatureRanking relieff(const LabeledDataset& d, const ReliefOptions& options) {
  require_records(d, 2);
  if (options.k == 0) throw InputError("ReliefF needs k >= 1");
  const std::size_t pos = d.count(Verdict::kDifficult);
  const std::size_t neg = d.size() - pos;
  if (pos == 0 || neg == 0) throw InputError("ReliefF needs both labels");
  if (std::min(pos, neg) < options.k) {
    throw InputError("ReliefF: a class has fewer than k = " + std::to_string(options.k) + " records");
  }

  const std::size_t n = d.size();
  const auto cols = columns_of(d);
  FeatureArray inv_range{};
  std::array<bool, kFeatureCount> degenerate{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    auto [lo, hi] = std::minmax_element(cols[f].begin(), cols[f].end());
    double range = *hi - *lo;
    degenerate[f] = !(range > 0.0);
    inv_range[f] = degenerate[f] ? 0.0 : 1.0 / range;
  }

  std::vector<std::size_t> sample(n);
  std::iota(sample.begin(), sample.end(), 0);
  if (options.m != 0 && options.m < n) {
    Rng rng(options.seed);
    seeded_shuffle(sample, rng);
    sample.resize(options.m);
  }

  FeatureArray weights{};
  std::vector<double> dist(n);
  // Distances snapped to a 1e-9 grid so ties do not hinge on rounding, which
  // differs between kernel variants.
  std::vector<long long> grid(n);
  std::vector<std::size_t> hits;
  std::vector<std::size_t> misses;
  auto closer = [&](std::size_t a, std::size_t b) {
    if (grid[a] != grid[b]) return grid[a] < grid[b];
    return d.records[a].features < d.records[b].features;
  };
  for (std::size_t i : sample) {
    const LabeledRecord& r = d.records[i];
    std::fill(dist.begin(), dist.end(), 0.0);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      kernels::abs_diff_accumulate(inv_range[f], cols[f], r.features[f], dist);
    }
    for (std::size_t j = 0; j < n; ++j) grid[j] = std::llround(dist[j] * 1e9);
    hits.clear();
    misses.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      (d.records[j].label == r.label ? hits : misses).push_back(j);
    }
    for (auto* group : {&hits, &misses}) {
      std::size_t take = std::min(options.k, group->size());
      std::partial_sort(group->begin(), group->begin() + static_cast<std::ptrdiff_t>(take),
                        group->end(), closer);
      group->resize(take);
    }
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      double hit_diff = 0.0;
      for (std::size_t j : hits) hit_diff += std::fabs(r.features[f] - cols[f][j]) * inv_range[f];
      double miss_diff = 0.0;
      for (std::size_t j : misses) miss_diff += std::fabs(r.features[f] - cols[f][j]) * inv_range[f];
      double delta = miss_diff / static_cast<double>(misses.size());
      if (!hits.empty()) delta -= hit_diff / static_cast<double>(hits.size());
      weights[f] += delta;
    }
  }
  for (double& w : weights) w /= static_cast<double>(sample.size());
  return make_ranking(RankingMethod::kReliefF, weights, degenerate);
}

FeatureRanking correlation_score(const LabeledDataset& d) {
  require_records(d, 2);
  const std::size_t n = d.size();
  const double nd = static_cast<double>(n);
  Column y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = d.records[i].label == Verdict::kDifficult ? 1.0 : 0.0;
  const double my = kernels::sum(y) / nd;
  for (double& v : y) v -= my;
  const double syy = kernels::dot(y, y);

  FeatureArray scores{};
  std::array<bool, kFeatureCount> degenerate{};
  auto cols = columns_of(d);
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    Column& x = cols[f];
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (!(*hi > *lo) || syy == 0.0) {
      degenerate[f] = true;
      continue;
    }
    const double mx = kernels::sum(x) / nd;
    for (double& v : x) v -= mx;
    const double sxx = kernels::dot(x, x);
    double r = kernels::dot(x, y) / std::sqrt(sxx * syy);
    scores[f] = std::min(1.0, std::fabs(r));
  }
  return make_ranking(RankingMethod::kCorrelation, scores, degenerate);
}

FeatureSelection select_features(const LabeledDataset& d, const ReliefOptions& relief) {
  require_records(d, 2);
  if (!d.has_both_labels()) throw InputError("feature selection needs both labels");
  ReliefOptions fitted = relief;
  std::size_t smaller = std::min(d.count(Verdict::kDifficult), d.count(Verdict::kNotDifficult));
  fitted.k = std::max<std::size_t>(1, std::min(relief.k, smaller));

  FeatureSelection s{{info_gain(d), relieff(d, fitted), correlation_score(d)}, std::nullopt};
  s.least_influential = majority_last(s.rankings);
  return s;
}

std::optional<Feature> majority_last(const std::array<FeatureRanking, 3>& rankings) {
  std::map<Feature, int> votes;
  for (const FeatureRanking& r : rankings) ++votes[r.last()];
  for (const auto& [feature, count] : votes) {
    if (count >= 2) return feature;
  }
  return std::nullopt;
}

std::optional<Feature> least_influential(const LabeledDataset& d) {
  return select_features(d).least_influential;
}

void write_ranking_table(std::ostream& out, const std::vector<CategoryRankings>& rows) {
  constexpr int kCategoryWidth = 14;
  constexpr int kMethodWidth = 13;
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  std::vector<std::size_t> widths;
  std::string header = pad("category", kCategoryWidth) + pad("method", kMethodWidth);
  for (Feature f : kAllFeatures) {
    std::size_t w = std::max<std::size_t>(feature_key(f).size(), 9) + 2;
    widths.push_back(w);
    header += pad(std::string(feature_key(f)), w);
  }
  while (!header.empty() && header.back() == ' ') header.pop_back();
  out << header << '\n';
  for (const CategoryRankings& row : rows) {
    for (const FeatureRanking& r : row.selection.rankings) {
      std::string line = pad(std::string(category_name(row.category)), kCategoryWidth) +
                         pad(std::string(ranking_method_name(r.method)), kMethodWidth);
      for (Feature f : kAllFeatures) {
        std::string cell = fixed4(r.score(f));
        if (r.last() == f) cell += '*';
        line += pad(cell, widths[index_of(f)]);
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
    out << pad(std::string(category_name(row.category)), kCategoryWidth) << "least influential: "
        << (row.selection.least_influential ? feature_key(*row.selection.least_influential) : "none")
        << '\n';
  }
}

void write_ranking_csv(std::ostream& out, const std::vector<CategoryRankings>& rows) {
  out << "category,method";
  for (Feature f : kAllFeatures) out << ',' << feature_key(f);
  out << ",last\n";
  for (const CategoryRankings& row : rows) {
    for (const FeatureRanking& r : row.selection.rankings) {
      out << category_name(row.category) << ',' << ranking_method_name(r.method);
      for (Feature f : kAllFeatures) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", r.score(f));
        out << ',' << buf;
      }
      out << ',' << feature_key(r.last()) << '\n';
    }
  }
}

}  // namespace dlm
