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

#ifndef DLM_TESTS_SUPPORT_FIXTURES_H_
#define DLM_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "dlm/dataset.h"
#include "dlm/logistic.h"
#include "dlm/ontology.h"
#include "dlm/rdf_io.h"

namespace dlm::testing {

std::filesystem::path data_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

std::vector<Triple> fixture_triples(const std::string& name);
Ontology fixture_ontology(const std::string& name);

// Fresh empty directory under the system temp dir; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Ex-prefixed IRI in the fixture namespaces.
Iri movie(const std::string& local);
Iri dsa(const std::string& local);

// Feature the synthetic labels of a category ignore: selectivity_bg for
// experts, selectivity_ex otherwise.
Feature ignored_feature(LearnerCategory category);

// Uniform features; the label thresholds a weighted sum of every feature
// except ignored_feature(category), plus a little noise.
std::vector<TrainingRecord> synthetic_records(LearnerCategory category, std::size_t n, std::uint64_t seed);

// Models that read one feature each (expert: popularity, intermediate:
// selectivity_ex, beginner: selectivity_bg) with threshold 0.5.
std::vector<LogisticModel> forced_models();

// Eight records whose forced-model verdicts cover every combination once.
std::vector<TrainingRecord> all_combination_records();

void write_records_file(const std::filesystem::path& path, const std::vector<TrainingRecord>& records);

}  // namespace dlm::testing

#endif  // DLM_TESTS_SUPPORT_FIXTURES_H_
