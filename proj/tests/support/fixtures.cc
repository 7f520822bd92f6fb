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

#include "support/fixtures.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace dlm::testing {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(DLM_TEST_DATA) / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::vector<Triple> fixture_triples(const std::string& name) {
  RdfFormat format = name.ends_with(".nt") ? RdfFormat::kNTriples : RdfFormat::kTurtle;
  return parse_triples(read_file(data_path(name)), format);
}

Ontology fixture_ontology(const std::string& name) { return load_ontology(data_path(name)); }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("dlm_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

Iri movie(const std::string& local) { return Iri("http://example.org/movie#" + local); }
Iri dsa(const std::string& local) { return Iri("http://example.org/dsa#" + local); }

Feature ignored_feature(LearnerCategory category) {
  return category == LearnerCategory::kExpert ? Feature::kSelectivityBg : Feature::kSelectivityEx;
}

std::vector<TrainingRecord> synthetic_records(LearnerCategory category, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FeatureArray weights{1.0, 0.8, 0.9, 1.2, 0.7};
  const std::size_t skip = index_of(ignored_feature(category));
  std::vector<TrainingRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    TrainingRecord r;
    r.id = std::string(category_name(category)) + "_" + std::to_string(i + 1);
    double s = 0.0;
    double total = 0.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      // Three decimals, as in the record files.
      r.features[f] = std::round(u(rng) * 1000.0) / 1000.0;
      if (f == skip) continue;
      s += weights[f] * r.features[f];
      total += weights[f];
    }
    s += 0.15 * (u(rng) - 0.5);
    r.label = s > 0.5 * total ? Verdict::kDifficult : Verdict::kNotDifficult;
    out.push_back(r);
  }
  return out;
}

std::vector<LogisticModel> forced_models() {
  std::vector<LogisticModel> out;
  const Feature used[] = {Feature::kPopularity, Feature::kSelectivityEx, Feature::kSelectivityBg};
  for (LearnerCategory c : kAllCategories) {
    LogisticModel m;
    m.category = c;
    m.mask = all_features_mask();
    m.weights[index_of(used[static_cast<std::size_t>(c)])] = 100.0;
    m.bias = -50.0;
    out.push_back(m);
  }
  return out;
}

std::vector<TrainingRecord> all_combination_records() {
  std::vector<TrainingRecord> out;
  for (int mask = 0; mask < 8; ++mask) {
    TrainingRecord r;
    r.id = "combo_" + std::to_string(mask);
    r.features = {mask & 4 ? 0.9 : 0.1, mask & 2 ? 0.9 : 0.1, mask & 1 ? 0.9 : 0.1, 0.5, 0.5};
    out.push_back(r);
  }
  return out;
}

void write_records_file(const std::filesystem::path& path, const std::vector<TrainingRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_records(out, records);
}

}  // namespace dlm::testing
