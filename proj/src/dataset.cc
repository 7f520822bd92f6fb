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

#include "dlm/dataset.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace dlm {
namespace {

constexpr std::string_view kIdField = "Item identifier";
constexpr std::string_view kLabelField = "Difficulty";
constexpr std::string_view kCsvHeader =
    "item,popularity,selectivity_ex,selectivity_bg,coherence,specificity,difficulty";

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

double parse_value(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ParseError("bad feature value '" + text + "'", line, 1);
  }
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParseError("feature value outside [0, 1]: " + text, line, 1);
  }
  return v;
}

std::optional<Verdict> parse_label(const std::string& text, std::size_t line) {
  if (text.empty()) return std::nullopt;
  std::optional<Verdict> v = verdict_from_name(text);
  if (!v) throw ParseError("difficulty must be d, nd or empty, got '" + text + "'", line, 1);
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<TrainingRecord> read_csv(std::istream& in, std::size_t line_no) {
  std::vector<TrainingRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> f = split_csv(t);
    if (f.size() != kFeatureCount + 2) {
      throw ParseError("expected " + std::to_string(kFeatureCount + 2) + " fields", line_no, 1);
    }
    TrainingRecord r;
    r.id = f[0];
    if (r.id.empty()) throw ParseError("empty item identifier", line_no, 1);
    for (std::size_t i = 0; i < kFeatureCount; ++i) r.features[i] = parse_value(f[i + 1], line_no);
    r.label = parse_label(f[kFeatureCount + 1], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

struct PartialRecord {
  std::optional<std::string> id;
  std::array<std::optional<double>, kFeatureCount> values;
  std::optional<std::optional<Verdict>> label;
  std::size_t first_line = 0;

  bool empty() const { return !id && !label && std::none_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }); }
};

TrainingRecord finish(const PartialRecord& p) {
  if (!p.id) throw ParseError("record without an item identifier", p.first_line, 1);
  TrainingRecord r;
  r.id = *p.id;
  for (Feature f : kAllFeatures) {
    const auto& v = p.values[index_of(f)];
    if (!v) {
      throw ParseError("record " + r.id + " lacks " + std::string(feature_record_name(f)),
                       p.first_line, 1);
    }
    r.features[index_of(f)] = *v;
  }
  if (!p.label) throw ParseError("record " + r.id + " lacks Difficulty", p.first_line, 1);
  r.label = *p.label;
  return r;
}

std::vector<TrainingRecord> read_blocks(std::istream& in, std::string first, std::size_t line_no) {
  std::vector<TrainingRecord> records;
  PartialRecord current;
  auto flush = [&] {
    if (!current.empty()) records.push_back(finish(current));
    current = PartialRecord{};
  };
  auto consume = [&](const std::string& raw, std::size_t n) {
    std::string t = trim(raw);
    if (t.empty()) {
      flush();
      return;
    }
    if (t.front() == '#') return;
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'Field: value'", n, 1);
    std::string name = trim(std::string_view(t).substr(0, colon));
    std::string value = trim(std::string_view(t).substr(colon + 1));
    if (current.empty()) current.first_line = n;
    if (name == kIdField) {
      if (current.id) throw ParseError("duplicate item identifier in record", n, 1);
      if (value.empty()) throw ParseError("empty item identifier", n, 1);
      current.id = value;
    } else if (name == kLabelField) {
      if (current.label) throw ParseError("duplicate Difficulty field", n, 1);
      current.label = parse_label(value, n);
    } else {
      std::optional<Feature> f = feature_from_key(name);
      if (!f) throw ParseError("unknown field '" + name + "'", n, colon);
      auto& slot = current.values[index_of(*f)];
      if (slot) throw ParseError("duplicate field '" + name + "'", n, 1);
      slot = parse_value(value, n);
    }
  };
  consume(first, line_no);
  std::string line;
  while (std::getline(in, line)) consume(line, ++line_no);
  flush();
  return records;
}

}  // namespace

std::size_t LabeledDataset::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const LabeledRecord& r) { return r.label == v; }));
}

LabeledDataset make_labeled(LearnerCategory category, const std::vector<TrainingRecord>& records) {
  if (records.empty()) {
    throw InputError("no training records for " + std::string(category_name(category)));
  }
  LabeledDataset d;
  d.category = category;
  d.records.reserve(records.size());
  for (const TrainingRecord& r : records) {
    if (!r.label) throw InputError("record " + r.id + " has no difficulty label");
    d.records.push_back({r.id, r.features, *r.label});
  }
  return d;
}

void write_records(std::ostream& out, const std::vector<TrainingRecord>& records) {
  bool first = true;
  for (const TrainingRecord& r : records) {
    if (!first) out << '\n';
    first = false;
    out << kIdField << ": " << r.id << '\n';
    for (Feature f : kAllFeatures) {
      out << feature_record_name(f) << ": " << fixed3(r.features[index_of(f)]) << '\n';
    }
    out << kLabelField << ':';
    if (r.label) out << ' ' << verdict_name(*r.label);
    out << '\n';
  }
}

void write_records_csv(std::ostream& out, const std::vector<TrainingRecord>& records) {
  out << kCsvHeader << '\n';
  for (const TrainingRecord& r : records) {
    out << r.id;
    for (double v : r.features) out << ',' << fixed3(v);
    out << ',';
    if (r.label) out << verdict_name(*r.label);
    out << '\n';
  }
}

std::vector<TrainingRecord> read_records(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t == kCsvHeader) return read_csv(in, line_no);
    if (t.rfind(kIdField, 0) == 0) return read_blocks(in, line, line_no);
    throw ParseError("unrecognized training record format", line_no, 1);
  }
  return {};
}

}  // namespace dlm
