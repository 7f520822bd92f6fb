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

#include "dlm/irt.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace dlm {
namespace {

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw InputError(what + " is not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

double p_correct(double theta, double alpha) {
  double z = theta - alpha;
  double e = std::exp(-std::fabs(z));
  return z >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
}

double estimate_alpha(double theta, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InputError("difficulty is undefined for p = " + fixed(p, 6) + "; p must lie in (0, 1)");
  }
  return theta - (std::log(p) - std::log1p(-p));
}

double empirical_p(std::size_t correct, std::size_t total) {
  if (total == 0) throw InputError("empirical proportion of an empty response list");
  if (correct > total) throw InvariantError("more correct responses than responses");
  if (correct == 0 || correct == total) {
    return (static_cast<double>(correct) + 0.5) / (static_cast<double>(total) + 1.0);
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

double empirical_p(const std::vector<bool>& responses) {
  return empirical_p(static_cast<std::size_t>(std::count(responses.begin(), responses.end(), true)),
                     responses.size());
}

Verdict verdict_from_p(double p) {
  return p <= 0.5 ? Verdict::kDifficult : Verdict::kNotDifficult;
}

Verdict& CategoryVerdicts::operator[](LearnerCategory c) {
  switch (c) {
    case LearnerCategory::kExpert: return expert;
    case LearnerCategory::kIntermediate: return intermediate;
    case LearnerCategory::kBeginner: return beginner;
  }
  throw InvariantError("unknown learner category");
}

Verdict CategoryVerdicts::operator[](LearnerCategory c) const {
  return const_cast<CategoryVerdicts&>(*this)[c];
}

std::array<CategoryVerdicts, 8> all_verdict_combinations() {
  std::array<CategoryVerdicts, 8> out;
  for (std::size_t i = 0; i < 8; ++i) {
    auto pick = [&](std::size_t bit) {
      return (i >> bit) & 1u ? Verdict::kNotDifficult : Verdict::kDifficult;
    };
    out[i] = {pick(2), pick(1), pick(0)};
  }
  return out;
}

std::string_view level_name(DifficultyLevel level) {
  switch (level) {
    case DifficultyLevel::kHigh: return "high";
    case DifficultyLevel::kMedium: return "medium";
    case DifficultyLevel::kLow: return "low";
    case DifficultyLevel::kNonClassifiable: return "non-classifiable";
  }
  throw InvariantError("unknown difficulty level");
}

std::optional<DifficultyLevel> level_from_name(std::string_view name) {
  for (DifficultyLevel l : kAllLevels) {
    if (level_name(l) == name) return l;
  }
  return std::nullopt;
}

DifficultyLevel assign_difficulty(const CategoryVerdicts& v) {
  constexpr Verdict d = Verdict::kDifficult;
  constexpr Verdict nd = Verdict::kNotDifficult;
  if (v.beginner != d) return DifficultyLevel::kNonClassifiable;
  if (v.expert == d && v.intermediate == d) return DifficultyLevel::kHigh;
  if (v.expert == nd && v.intermediate == d) return DifficultyLevel::kMedium;
  if (v.expert == nd && v.intermediate == nd) return DifficultyLevel::kLow;
  return DifficultyLevel::kNonClassifiable;
}

TraitLevel make_trait_level(double theta, LearnerCategory category) {
  if (!(theta >= kTraitMin && theta <= kTraitMax)) {
    throw InputError("trait level " + fixed(theta, 4) + " outside [-1.5, 1.5]");
  }
  return {theta, category};
}

std::vector<bool> simulate_responses(const std::vector<TraitLevel>& cohort, double alpha,
                                     std::uint64_t seed) {
  if (cohort.empty()) throw InputError("cannot simulate an empty cohort");
  if (!std::isfinite(alpha)) throw InputError("item difficulty must be finite");
  Rng rng(seed);
  std::vector<bool> out;
  out.reserve(cohort.size());
  for (const TraitLevel& t : cohort) out.push_back(uniform01(rng) < p_correct(t.theta, alpha));
  return out;
}

ThetaMap category_thetas() {
  return {{LearnerCategory::kExpert, 1.25},
          {LearnerCategory::kIntermediate, 0.0},
          {LearnerCategory::kBeginner, -1.25}};
}

ThetaMap parse_theta_map(std::string_view text) {
  ThetaMap thetas = category_thetas();
  std::set<LearnerCategory> seen;
  std::stringstream ss{std::string(text)};
  std::string entry;
  while (std::getline(ss, entry, ',')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos) throw InputError("theta entry '" + entry + "' lacks '='");
    std::string name = trim(std::string_view(entry).substr(0, eq));
    std::optional<LearnerCategory> c = category_from_name(name);
    if (!c) throw InputError("unknown learner category '" + name + "'");
    if (!seen.insert(*c).second) throw InputError("category '" + name + "' given twice");
    double theta = parse_real(trim(std::string_view(entry).substr(eq + 1)), "theta for " + name);
    thetas[*c] = make_trait_level(theta, *c).theta;
  }
  return thetas;
}

std::string format_theta_map(const ThetaMap& thetas) {
  std::string out;
  for (LearnerCategory c : kAllCategories) {
    if (!out.empty()) out += ',';
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", thetas.at(c));
    out += std::string(category_name(c)) + "=" + buf;
  }
  return out;
}

CategoryVerdicts verdicts_from_alpha(double alpha, const ThetaMap& thetas) {
  const double e = thetas.at(LearnerCategory::kExpert);
  const double i = thetas.at(LearnerCategory::kIntermediate);
  const double b = thetas.at(LearnerCategory::kBeginner);
  if (!(e > i && i > b)) {
    throw InputError("difficulty bands need expert > intermediate > beginner trait levels");
  }
  auto verdict = [alpha](double edge) { return alpha >= edge ? Verdict::kDifficult : Verdict::kNotDifficult; };
  return {verdict((e + i) / 2.0), verdict((i + b) / 2.0), verdict(b - (i - b) / 2.0)};
}

std::vector<Response> read_responses(std::istream& in) {
  std::vector<Response> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header) {
      if (t != "item,learner,category,correct") {
        throw ParseError("expected header item,learner,category,correct", line_no, 1);
      }
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(trim(field));
    if (f.size() != 4) throw ParseError("expected 4 fields", line_no, 1);
    Response r;
    r.item = f[0];
    r.learner = f[1];
    if (r.item.empty() || r.learner.empty()) throw ParseError("empty item or learner id", line_no, 1);
    std::optional<LearnerCategory> c = category_from_name(f[2]);
    if (!c) throw ParseError("unknown learner category '" + f[2] + "'", line_no, 1);
    r.category = *c;
    if (f[3] != "0" && f[3] != "1") throw ParseError("correct must be 0 or 1", line_no, 1);
    r.correct = f[3] == "1";
    out.push_back(std::move(r));
  }
  if (!header) throw InputError("response file is empty");
  return out;
}

void write_responses(std::ostream& out, const std::vector<Response>& responses) {
  out << "item,learner,category,correct\n";
  for (const Response& r : responses) {
    out << r.item << ',' << r.learner << ',' << category_name(r.category) << ','
        << (r.correct ? '1' : '0') << '\n';
  }
}

std::vector<ItemCalibration> calibrate(const std::vector<Response>& responses, const ThetaMap& thetas) {
  for (LearnerCategory c : kAllCategories) make_trait_level(thetas.at(c), c);

  std::map<std::string, LearnerCategory> learner_category;
  std::set<std::pair<std::string, std::string>> answered;
  std::map<std::string, std::array<std::array<std::size_t, 2>, 3>> counts;  // [category][total, correct]
  for (const Response& r : responses) {
    auto [it, fresh] = learner_category.emplace(r.learner, r.category);
    if (!fresh && it->second != r.category) {
      throw InputError("learner " + r.learner + " appears in two categories");
    }
    if (!answered.emplace(r.item, r.learner).second) {
      throw InputError("learner " + r.learner + " answered item " + r.item + " twice");
    }
    auto& cell = counts[r.item][static_cast<std::size_t>(r.category)];
    ++cell[0];
    if (r.correct) ++cell[1];
  }

  std::vector<ItemCalibration> items;
  for (const auto& [item, per_category] : counts) {
    ItemCalibration ic;
    ic.item = item;
    ic.complete = true;
    CategoryVerdicts cohort;
    double weighted = 0.0;
    double weight = 0.0;
    for (LearnerCategory c : kAllCategories) {
      const std::size_t k = static_cast<std::size_t>(c);
      CategoryCalibration& cc = ic.categories[k];
      cc.total = per_category[k][0];
      cc.correct = per_category[k][1];
      if (cc.total == 0) {
        ic.complete = false;
        continue;
      }
      cc.p = empirical_p(cc.correct, cc.total);
      cc.alpha = estimate_alpha(thetas.at(c), cc.p);
      cc.verdict = verdict_from_p(cc.p);
      cohort[c] = cc.verdict;
      // Fisher information of the logit at p.
      double info = static_cast<double>(cc.total) * cc.p * (1.0 - cc.p);
      weighted += info * cc.alpha;
      weight += info;
    }
    if (ic.complete) {
      ic.alpha = weighted / weight;
      ic.cohort_level = assign_difficulty(cohort);
      ic.level = assign_difficulty(verdicts_from_alpha(ic.alpha, thetas));
    }
    items.push_back(std::move(ic));
  }
  return items;
}

void write_calibration(std::ostream& out, const std::vector<ItemCalibration>& items) {
  out << "item,status";
  for (LearnerCategory c : kAllCategories) {
    std::string n(category_name(c));
    out << ",n_" << n << ",p_" << n << ",alpha_" << n << ",verdict_" << n;
  }
  out << ",alpha,cohort_level,level\n";
  for (const ItemCalibration& ic : items) {
    out << ic.item << ',' << (ic.complete ? "complete" : "incomplete");
    for (const CategoryCalibration& cc : ic.categories) {
      out << ',' << cc.total;
      if (cc.total == 0) {
        out << ",,,";
      } else {
        out << ',' << fixed(cc.p, 6) << ',' << fixed(cc.alpha, 6) << ',' << verdict_name(cc.verdict);
      }
    }
    if (ic.complete) {
      out << ',' << fixed(ic.alpha, 6) << ',' << level_name(ic.cohort_level) << ','
          << level_name(ic.level);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

std::size_t LevelTally::total() const {
  std::size_t t = 0;
  for (std::size_t c : counts) t += c;
  return t;
}

std::size_t LevelTally::classifiable() const { return counts[0] + counts[1] + counts[2]; }

double LevelTally::classifiable_pct() const {
  return total() == 0 ? 0.0 : 100.0 * static_cast<double>(classifiable()) / static_cast<double>(total());
}

double LevelTally::non_classifiable_pct() const {
  return total() == 0 ? 0.0
                      : 100.0 * static_cast<double>(non_classifiable()) / static_cast<double>(total());
}

void write_level_tally(std::ostream& out, const LevelTally& tally) {
  auto row = [&](std::string_view label, std::size_t count) {
    double pct = tally.total() == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(tally.total());
    std::string name(label);
    name.resize(std::max<std::size_t>(name.size(), 18), ' ');
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6zu  %6.1f%%", count, pct);
    out << name << buf << '\n';
  };
  out << "level" << std::string(13, ' ') << " count  percent\n";
  for (DifficultyLevel l : kAllLevels) row(level_name(l), tally.counts[static_cast<std::size_t>(l)]);
  row("classifiable", tally.classifiable());
  row("non-classifiable", tally.non_classifiable());
  row("total", tally.total());
}

}  // namespace dlm
