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

#include "dlm/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dlm/features.h"
#include "json.hpp"

namespace dlm {
namespace {

namespace fs = std::filesystem;

const fs::path& input(const RunConfig& c, const std::string& name) {
  auto it = c.inputs.find(name);
  if (it == c.inputs.end()) throw InputError("missing input: --" + name);
  return it->second;
}

std::optional<fs::path> maybe_input(const RunConfig& c, const std::string& name) {
  auto it = c.inputs.find(name);
  if (it == c.inputs.end()) return std::nullopt;
  return it->second;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

// Runs `body` on a freshly opened output file under the output directory.
template <typename Body>
void write_file(const RunConfig& c, const std::string& name, Body&& body) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw InputError("cannot create output directory " + c.out.string() + ": " + ec.message());
  fs::path path = c.out / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw InputError("error writing " + path.string());
}

void write_config(const RunConfig& c, std::string_view command) {
  write_file(c, std::string(command) + ".config.json", [&](std::ostream& out) { out << config_json(c, command); });
}

Ontology load(const RunConfig& c) {
  if (!c.ontology) throw InputError("missing input: --ontology");
  return load_ontology(*c.ontology, c.format);
}

std::vector<QuestionPattern> selected_patterns(const RunConfig& c) {
  if (c.patterns.empty()) return builtin_patterns();
  std::vector<QuestionPattern> out;
  for (const std::string& id : c.patterns) out.push_back(builtin_pattern(id));
  return out;
}

GenerateResult generate_all(const RunConfig& c, const Ontology& o) {
  GenerateResult result;
  for (const QuestionPattern& p : selected_patterns(c)) {
    std::vector<Question> qs = generate(o, p, c.limit);
    result.per_pattern.emplace_back(p.id, qs.size());
    std::move(qs.begin(), qs.end(), std::back_inserter(result.questions));
  }
  return result;
}

std::vector<TrainingRecord> featurize(const Ontology& o, const std::vector<Question>& questions) {
  std::vector<TrainingRecord> records;
  records.reserve(questions.size());
  for (const Question& q : questions) {
    records.push_back({q.id, feature_vector(o, q).values(), std::nullopt});
  }
  return records;
}

std::vector<TrainingRecord> read_record_file(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return read_records(in);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<Question> read_question_file(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return read_questions(in);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, sep)) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    std::size_t b = f.find_first_not_of(' ');
    out.push_back(b == std::string::npos ? "" : f.substr(b));
  }
  return out;
}

}  // namespace

std::string config_json(const RunConfig& c, std::string_view command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["ontology"] = c.ontology ? nlohmann::ordered_json(c.ontology->generic_string()) : nlohmann::ordered_json();
  j["format"] = !c.format ? nlohmann::ordered_json()
                          : nlohmann::ordered_json(*c.format == RdfFormat::kTurtle ? "turtle" : "n-triples");
  j["patterns"] = c.patterns;
  j["limit"] = c.limit;
  j["seed"] = c.seed;
  nlohmann::ordered_json thetas;
  for (LearnerCategory cat : kAllCategories) thetas[std::string(category_name(cat))] = c.thetas.at(cat);
  j["thetas"] = thetas;
  j["hyperparameters"] = {{"learning_rate", c.hyper.learning_rate},
                          {"epochs", c.hyper.epochs},
                          {"l2", c.hyper.l2},
                          {"seed", c.hyper.seed}};
  j["folds"] = c.folds;
  j["all_features"] = c.all_features;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [name, path] : c.inputs) inputs[name] = path.generic_string();
  j["inputs"] = inputs;
  j["out"] = c.out.generic_string();
  return j.dump(2) + "\n";
}

GenerateResult cmd_generate(const RunConfig& c, std::ostream& log) {
  Ontology o = load(c);
  GenerateResult result = generate_all(c, o);
  write_file(c, "questions.tsv", [&](std::ostream& out) { write_questions(out, result.questions); });
  write_config(c, "generate");
  for (const auto& [id, n] : result.per_pattern) log << id << ": " << n << " questions\n";
  log << "total: " << result.questions.size() << " questions\n";
  return result;
}

std::vector<TrainingRecord> cmd_featurize(const RunConfig& c, std::ostream& log) {
  Ontology o = load(c);
  std::vector<Question> questions;
  if (auto path = maybe_input(c, "questions")) {
    questions = read_question_file(*path);
  } else {
    questions = generate_all(c, o).questions;
  }
  std::vector<TrainingRecord> records = featurize(o, questions);
  write_file(c, "features.txt", [&](std::ostream& out) { write_records(out, records); });
  write_file(c, "features.csv", [&](std::ostream& out) { write_records_csv(out, records); });
  write_config(c, "featurize");
  log << "featurized " << records.size() << " questions\n";
  return records;
}

void write_masks(std::ostream& out, const std::map<LearnerCategory, FeatureMask>& masks) {
  for (const auto& [category, mask] : masks) out << category_name(category) << ' ' << format_mask(mask) << '\n';
}

std::map<LearnerCategory, FeatureMask> read_masks(std::istream& in) {
  std::map<LearnerCategory, FeatureMask> masks;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::size_t space = line.find(' ');
    std::string name = line.substr(0, space);
    std::optional<LearnerCategory> c = category_from_name(name);
    if (!c) throw InputError("unknown learner category '" + name + "' in mask file");
    FeatureMask m = parse_mask(space == std::string::npos ? "" : line.substr(space + 1));
    if (mask_size(m) == 0) throw InputError("empty mask for " + name);
    if (!masks.emplace(*c, m).second) throw InputError("mask for " + name + " given twice");
  }
  return masks;
}

std::vector<CategoryRankings> cmd_rank_features(const RunConfig& c, std::ostream& log) {
  std::vector<CategoryRankings> rows;
  std::map<LearnerCategory, FeatureMask> masks = default_masks();
  ReliefOptions relief;
  relief.seed = c.seed;
  for (LearnerCategory cat : kAllCategories) {
    auto path = maybe_input(c, std::string(category_name(cat)));
    if (!path) continue;
    LabeledDataset d = make_labeled(cat, read_record_file(*path));
    rows.push_back({cat, select_features(d, relief)});
    if (rows.back().selection.least_influential) {
      masks[cat] = mask_without(*rows.back().selection.least_influential);
    }
  }
  if (rows.empty()) throw InputError("rank-features needs at least one of --expert, --intermediate, --beginner");
  write_file(c, "rankings.txt", [&](std::ostream& out) { write_ranking_table(out, rows); });
  write_file(c, "rankings.csv", [&](std::ostream& out) { write_ranking_csv(out, rows); });
  write_file(c, "masks.txt", [&](std::ostream& out) { write_masks(out, masks); });
  write_config(c, "rank-features");
  write_ranking_table(log, rows);
  return rows;
}

TrainResult cmd_train(const RunConfig& c, std::ostream& log) {
  std::map<LearnerCategory, FeatureMask> masks = default_masks();
  std::map<LearnerCategory, std::string> source;
  for (LearnerCategory cat : kAllCategories) source[cat] = "default";
  if (c.all_features) {
    for (auto& [cat, m] : masks) {
      m = all_features_mask();
      source[cat] = "all features";
    }
  } else if (auto path = maybe_input(c, "masks")) {
    std::ifstream in = open_in(*path);
    for (const auto& [cat, m] : read_masks(in)) {
      masks[cat] = m;
      source[cat] = "ranked (" + path->filename().string() + ")";
    }
  }

  Hyperparameters hyper = c.hyper;
  hyper.seed = c.seed;
  TrainResult result;
  for (LearnerCategory cat : kAllCategories) {
    LabeledDataset d = make_labeled(cat, read_record_file(input(c, std::string(category_name(cat)))));
    result.cv[cat] = cross_validate(d, masks[cat], hyper, c.folds);
    result.models[cat] = train(d, masks[cat], hyper);
    result.mask_source[cat] = source[cat];
  }

  std::ostringstream report;
  for (LearnerCategory cat : kAllCategories) {
    const CvReport& r = result.cv.at(cat);
    const FeatureMask& m = masks.at(cat);
    report << category_name(cat) << '\n';
    report << "  mask: " << format_mask(m) << " [" << source.at(cat) << "]\n";
    for (Feature f : kAllFeatures) {
      if (!m[index_of(f)]) report << "  dropped: " << feature_key(f) << '\n';
    }
    report << "  folds:";
    for (double a : r.fold_accuracy) report << ' ' << fixed(100.0 * a, 1);
    report << '\n';
    report << "  mean accuracy: " << pct(r.mean_accuracy) << '\n';
    report << "  tp " << r.tp << "  fp " << r.fp << "  tn " << r.tn << "  fn " << r.fn << '\n';
    report << "  final loss: " << fixed(result.models.at(cat).meta.final_loss, 6) << '\n';
  }
  for (const auto& [cat, m] : result.models) {
    write_file(c, "model_" + std::string(category_name(cat)) + ".txt",
               [&](std::ostream& out) { save_model(out, m); });
  }
  write_file(c, "cv_report.txt", [&](std::ostream& out) { out << report.str(); });
  write_config(c, "train");
  log << report.str();
  return result;
}

void write_predictions(std::ostream& out, const std::vector<PredictionRow>& rows) {
  out << "item";
  for (LearnerCategory cat : kAllCategories) {
    out << ",p_" << category_name(cat) << ",verdict_" << category_name(cat);
  }
  out << ",level\n";
  for (const PredictionRow& r : rows) {
    out << r.item;
    for (const Prediction& p : r.per_category) out << ',' << fixed(p.probability, 6) << ',' << verdict_name(p.label);
    out << ',' << level_name(r.level) << '\n';
  }
}

PredictResult cmd_predict(const RunConfig& c, std::ostream& log) {
  const fs::path& dir = input(c, "models");
  std::array<LogisticModel, 3> models;
  for (LearnerCategory cat : kAllCategories) {
    fs::path path = dir / ("model_" + std::string(category_name(cat)) + ".txt");
    if (!fs::exists(path)) throw InputError("missing model file " + path.string());
    std::ifstream in = open_in(path);
    LogisticModel m = load_model(in);
    if (m.category != cat) throw InputError(path.string() + " holds a " + std::string(category_name(m.category)) + " model");
    models[static_cast<std::size_t>(cat)] = m;
  }

  std::vector<TrainingRecord> records;
  if (auto path = maybe_input(c, "features")) {
    records = read_record_file(*path);
  } else {
    Ontology o = load(c);
    std::vector<Question> questions = maybe_input(c, "questions") ? read_question_file(input(c, "questions"))
                                                                   : generate_all(c, o).questions;
    records = featurize(o, questions);
  }

  PredictResult result;
  for (const TrainingRecord& r : records) {
    PredictionRow row;
    row.item = r.id;
    CategoryVerdicts v;
    for (LearnerCategory cat : kAllCategories) {
      Prediction p = predict(models[static_cast<std::size_t>(cat)], r.features);
      row.per_category[static_cast<std::size_t>(cat)] = p;
      v[cat] = p.label;
    }
    row.level = assign_difficulty(v);
    result.tally.add(row.level);
    result.rows.push_back(std::move(row));
  }
  write_file(c, "predictions.csv", [&](std::ostream& out) { write_predictions(out, result.rows); });
  write_file(c, "levels.txt", [&](std::ostream& out) { write_level_tally(out, result.tally); });
  write_config(c, "predict");
  write_level_tally(log, result.tally);
  return result;
}

std::vector<ItemCalibration> cmd_calibrate(const RunConfig& c, std::ostream& log) {
  const fs::path& path = input(c, "responses");
  std::ifstream in = open_in(path);
  std::vector<Response> responses;
  try {
    responses = read_responses(in);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  std::vector<ItemCalibration> items = calibrate(responses, c.thetas);
  LevelTally tally;
  std::size_t incomplete = 0;
  for (const ItemCalibration& ic : items) {
    if (ic.complete) {
      tally.add(ic.level);
    } else {
      ++incomplete;
    }
  }
  write_file(c, "calibration.csv", [&](std::ostream& out) { write_calibration(out, items); });
  write_file(c, "levels.txt", [&](std::ostream& out) { write_level_tally(out, tally); });
  write_config(c, "calibrate");
  log << "calibrated " << items.size() << " items (" << incomplete << " incomplete)\n";
  for (const ItemCalibration& ic : items) {
    log << "  " << ic.item << ": ";
    if (ic.complete) {
      log << "alpha " << fixed(ic.alpha, 4) << ", level " << level_name(ic.level) << '\n';
    } else {
      log << "incomplete\n";
    }
  }
  return items;
}

double ReportSummary::match_pct() const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(matches) / static_cast<double>(total);
}

std::map<std::string, DifficultyLevel> read_levels(std::istream& in) {
  std::map<std::string, DifficultyLevel> levels;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> item_col;
  std::optional<std::size_t> level_col;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f = split(line, ',');
    if (!item_col) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == "item") item_col = i;
        if (f[i] == "level") level_col = i;
      }
      if (!item_col || !level_col) throw ParseError("header needs 'item' and 'level' columns", line_no, 1);
      width = f.size();
      continue;
    }
    if (f.size() != width) throw ParseError("expected " + std::to_string(width) + " fields", line_no, 1);
    std::optional<DifficultyLevel> level = level_from_name(f[*level_col]);
    if (!level) throw ParseError("unknown level '" + f[*level_col] + "'", line_no, 1);
    if (!levels.emplace(f[*item_col], *level).second) {
      throw ParseError("duplicate item '" + f[*item_col] + "'", line_no, 1);
    }
  }
  if (!item_col) throw InputError("level file is empty");
  return levels;
}

ReportSummary compare_levels(const std::map<std::string, DifficultyLevel>& predicted,
                             const std::map<std::string, DifficultyLevel>& gold) {
  for (const auto& [item, level] : gold) {
    if (!predicted.contains(item)) throw InputError("item " + item + " has a gold level but no prediction");
  }
  for (const auto& [item, level] : predicted) {
    if (!gold.contains(item)) throw InputError("item " + item + " has a prediction but no gold level");
  }
  ReportSummary s;
  for (const auto& [item, g] : gold) {
    DifficultyLevel p = predicted.at(item);
    ++s.total;
    if (p == g) ++s.matches;
    if (p == DifficultyLevel::kNonClassifiable) ++s.non_classifiable;
    ++s.confusion[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)];
  }
  return s;
}

void write_report(std::ostream& out, const ReportSummary& s) {
  out << "items: " << s.total << '\n';
  out << "matches: " << s.matches << '/' << s.total << " (" << pct(s.match_pct()) << ")\n";
  out << "non-classifiable: " << s.non_classifiable << '\n';
  out << "confusion (rows: gold, columns: predicted)\n";
  auto pad = [](std::string_view text, std::size_t width) {
    std::string t(text);
    if (t.size() < width) t.insert(0, width - t.size(), ' ');
    return t;
  };
  constexpr std::size_t kWidth = 18;
  std::string header(kWidth, ' ');
  for (DifficultyLevel l : kAllLevels) header += pad(level_name(l), kWidth);
  out << header << '\n';
  for (DifficultyLevel g : kAllLevels) {
    std::string row(level_name(g));
    row.resize(kWidth, ' ');
    for (DifficultyLevel p : kAllLevels) {
      row += pad(std::to_string(s.confusion[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)]), kWidth);
    }
    out << row << '\n';
  }
}

ReportSummary cmd_report(const RunConfig& c, std::ostream& log) {
  auto read = [](const fs::path& path) {
    std::ifstream in = open_in(path);
    try {
      return read_levels(in);
    } catch (const ParseError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  };
  ReportSummary s = compare_levels(read(input(c, "predictions")), read(input(c, "gold")));
  write_file(c, "report.txt", [&](std::ostream& out) { write_report(out, s); });
  write_config(c, "report");
  write_report(log, s);
  return s;
}

int run_guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariantError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariantError;
  }
  return kExitSuccess;
}

}  // namespace dlm
