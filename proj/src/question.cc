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

#include "dlm/question.h"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dlm/rdf_io.h"

namespace dlm {
namespace {

const Iri& thing() {
  static const Iri kThing{std::string(vocab::kThing)};
  return kThing;
}

std::vector<ConditionExpr> slot_candidates(const Ontology& o, const Iri& key, SlotType type) {
  std::vector<ConditionExpr> out;
  switch (type) {
    case SlotType::kConcept: {
      const std::set<Iri>& types = o.asserted_concepts(key);
      if (types.empty()) out.push_back(ConditionExpr::named_concept(thing()));
      for (const Iri& c : types) out.push_back(ConditionExpr::named_concept(c));
      break;
    }
    case SlotType::kRoleIndividual:
      for (const auto& [role, target] : o.out_links(key)) {
        out.push_back(ConditionExpr::exists_individual(role, target));
      }
      break;
    case SlotType::kRoleConcept: {
      std::set<ConditionExpr> unique;
      for (const auto& [role, target] : o.out_links(key)) {
        for (const Iri& c : o.asserted_concepts(target)) {
          unique.insert(ConditionExpr::exists_concept(role, c));
        }
      }
      out.assign(unique.begin(), unique.end());
      break;
    }
    case SlotType::kDataValue:
      for (const auto& [role, value] : o.data_values(key)) {
        out.push_back(ConditionExpr::exists_value(role, value));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& index,
                      const std::vector<std::vector<ConditionExpr>>& candidates) {
  for (std::size_t j = index.size(); j-- > 0;) {
    if (++index[j] < candidates[j].size()) return true;
    index[j] = 0;
  }
  return false;
}

std::string split_camel_case(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool upper = std::isupper(static_cast<unsigned char>(c));
    if (upper && i > 0 && std::islower(static_cast<unsigned char>(s[i - 1]))) out += ' ';
    out += upper ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
  }
  return out;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

void resolve_articles(std::string& s) {
  constexpr std::string_view kToken = "a/an ";
  for (std::size_t pos = s.find(kToken); pos != std::string::npos; pos = s.find(kToken, pos)) {
    char next = pos + kToken.size() < s.size() ? s[pos + kToken.size()] : ' ';
    bool vowel = std::string_view("aeiouAEIOU").find(next) != std::string_view::npos;
    s.replace(pos, kToken.size(), vowel ? "an " : "a ");
  }
}

void skip_spaces(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
}

Iri expect_iri_term(std::string_view text, std::size_t& pos) {
  Term t = parse_term(text, pos);
  if (!std::holds_alternative<Iri>(t)) throw InputError("expected IRI in condition");
  return std::get<Iri>(std::move(t));
}

ConditionExpr parse_condition_at(std::string_view text, std::size_t& pos) {
  skip_spaces(text, pos);
  if (text.substr(pos, 8) == "concept:") {
    pos += 8;
    return ConditionExpr::named_concept(expect_iri_term(text, pos));
  }
  if (text.substr(pos, 7) != "exists:") {
    throw InputError("unrecognized condition: " + std::string(text.substr(pos)));
  }
  pos += 7;
  Iri role = expect_iri_term(text, pos);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    return ConditionExpr::exists_concept(std::move(role), expect_iri_term(text, pos));
  }
  if (text.substr(pos, 2) != "={") throw InputError("expected '={' in condition");
  pos += 2;
  Term filler = parse_term(text, pos);
  if (pos >= text.size() || text[pos] != '}') throw InputError("expected '}' in condition");
  ++pos;
  if (auto* lit = std::get_if<Literal>(&filler)) {
    return ConditionExpr::exists_value(std::move(role), std::move(*lit));
  }
  return ConditionExpr::exists_individual(std::move(role), std::get<Iri>(std::move(filler)));
}

std::string sanitize_field(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

void validate_pattern(const QuestionPattern& pattern) {
  if (pattern.slots.empty() || pattern.slots.size() > 4) {
    throw InvariantError("pattern " + pattern.id + " must have 1 to 4 slots");
  }
  if (std::count(pattern.slots.begin(), pattern.slots.end(), SlotType::kConcept) > 1) {
    throw InvariantError("pattern " + pattern.id + " has more than one concept slot");
  }
}

const std::vector<QuestionPattern>& builtin_patterns() {
  static const std::vector<QuestionPattern> kPatterns = {
      {"P1", {SlotType::kConcept}, "Name a/an [?C]."},
      {"P2", {SlotType::kConcept, SlotType::kRoleIndividual}, "Name the [?C] that [?R1] [?o1]."},
      {"P3",
       {SlotType::kConcept, SlotType::kRoleIndividual, SlotType::kRoleIndividual},
       "Name the [?C] that [?R1] [?o1] and [?R2] [?o2]."},
      {"P4", {SlotType::kConcept, SlotType::kRoleConcept}, "Name the [?C] that [?R1] a/an [?C1]."},
      {"P5",
       {SlotType::kConcept, SlotType::kRoleIndividual, SlotType::kDataValue},
       "Name the [?C] that [?R1] [?o1] and [?R2] [?o2]."},
  };
  return kPatterns;
}

const QuestionPattern& builtin_pattern(std::string_view id) {
  for (const QuestionPattern& p : builtin_patterns()) {
    if (p.id == id) return p;
  }
  throw InputError("unknown question pattern '" + std::string(id) + "'");
}

std::string display_name(const Ontology& o, const Iri& iri, bool is_role) {
  if (auto label = o.label_of(iri)) return *label;
  if (iri.str() == vocab::kThing) return "thing";
  std::string name(iri.local_name());
  std::replace(name.begin(), name.end(), '_', ' ');
  return is_role ? split_camel_case(name) : name;
}

std::string render_stem(const Ontology& o, const QuestionPattern& pattern,
                        const std::vector<ConditionExpr>& bindings) {
  std::string stem = pattern.stem_template;
  int role_index = 0;
  for (const ConditionExpr& c : bindings) {
    if (c.kind() == ConditionKind::kNamedConcept) {
      replace_all(stem, "[?C]", display_name(o, *c.concept_iri()));
      continue;
    }
    std::string k = std::to_string(++role_index);
    replace_all(stem, "[?R" + k + "]", display_name(o, *c.role(), true));
    switch (c.kind()) {
      case ConditionKind::kExistsRoleIndividual:
        replace_all(stem, "[?o" + k + "]", display_name(o, c.filler_iri()));
        break;
      case ConditionKind::kExistsRoleConcept:
        replace_all(stem, "[?C" + k + "]", display_name(o, c.filler_iri()));
        break;
      case ConditionKind::kExistsDataValue:
        replace_all(stem, "[?o" + k + "]", c.filler_literal().lexical);
        break;
      case ConditionKind::kNamedConcept:
        break;
    }
  }
  resolve_articles(stem);
  return stem;
}

std::vector<Question> generate(const Ontology& o, const QuestionPattern& pattern,
                               std::size_t limit) {
  if (limit == 0) throw InputError("question limit must be at least 1");
  validate_pattern(pattern);

  struct Binding {
    Iri key;
    std::vector<ConditionExpr> slots;
  };
  std::map<std::vector<ConditionExpr>, Binding> unique;

  for (const Iri& key : o.individuals()) {
    std::vector<std::vector<ConditionExpr>> candidates;
    for (SlotType t : pattern.slots) candidates.push_back(slot_candidates(o, key, t));
    if (std::any_of(candidates.begin(), candidates.end(),
                    [](const auto& c) { return c.empty(); })) {
      continue;
    }
    // Odometer over slot candidates; repeated slot types take strictly
    // increasing indexes so each unordered combination appears once.
    std::vector<std::size_t> index(pattern.slots.size(), 0);
    auto valid = [&]() {
      for (std::size_t j = 1; j < index.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (pattern.slots[i] == pattern.slots[j] && index[i] >= index[j]) return false;
        }
      }
      return true;
    };
    do {
      if (!valid()) continue;
      std::vector<ConditionExpr> slots;
      for (std::size_t j = 0; j < index.size(); ++j) slots.push_back(candidates[j][index[j]]);
      std::vector<ConditionExpr> conditions = slots;
      std::sort(conditions.begin(), conditions.end());
      if (std::adjacent_find(conditions.begin(), conditions.end()) == conditions.end()) {
        unique.try_emplace(std::move(conditions), Binding{key, std::move(slots)});
      }
    } while (next_combination(index, candidates));
  }

  std::vector<Question> questions;
  questions.reserve(unique.size());
  for (auto& [conditions, binding] : unique) {
    Question q{"", binding.key, conditions, render_stem(o, pattern, binding.slots), pattern.id};
    questions.push_back(std::move(q));
  }
  std::sort(questions.begin(), questions.end(), [](const Question& a, const Question& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.conditions < b.conditions;
  });
  if (questions.size() > limit) questions.erase(questions.begin() + static_cast<std::ptrdiff_t>(limit), questions.end());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    questions[i].id = pattern.id + "-" + std::to_string(i + 1);
  }
  return questions;
}

std::set<Iri> answer_set(const Ontology& o, const Question& q) {
  if (q.conditions.empty()) throw InvariantError("question " + q.id + " has no conditions");
  std::set<Iri> result = o.instances_of(q.conditions.front());
  for (std::size_t i = 1; i < q.conditions.size() && !result.empty(); ++i) {
    std::set<Iri> next = o.instances_of(q.conditions[i]);
    std::set<Iri> both;
    std::set_intersection(result.begin(), result.end(), next.begin(), next.end(),
                          std::inserter(both, both.end()));
    result = std::move(both);
  }
  return result;
}

std::string format_condition(const ConditionExpr& c) {
  switch (c.kind()) {
    case ConditionKind::kNamedConcept:
      return "concept:" + format_term(*c.concept_iri());
    case ConditionKind::kExistsRoleIndividual:
    case ConditionKind::kExistsDataValue:
      return "exists:" + format_term(*c.role()) + "={" + format_term(*c.filler()) + "}";
    case ConditionKind::kExistsRoleConcept:
      return "exists:" + format_term(*c.role()) + "." + format_term(*c.filler());
  }
  throw InvariantError("unhandled condition kind");
}

ConditionExpr parse_condition(std::string_view text) {
  std::size_t pos = 0;
  ConditionExpr c = parse_condition_at(text, pos);
  skip_spaces(text, pos);
  if (pos != text.size()) throw InputError("trailing text after condition");
  return c;
}

void write_questions(std::ostream& out, const std::vector<Question>& questions) {
  out << "# id\tkey\tpattern\tconditions\tstem\n";
  for (const Question& q : questions) {
    out << q.id << '\t' << q.key.str() << '\t' << q.pattern_id << '\t';
    for (std::size_t i = 0; i < q.conditions.size(); ++i) {
      if (i > 0) out << " ; ";
      out << format_condition(q.conditions[i]);
    }
    out << '\t' << sanitize_field(q.stem) << '\n';
  }
}

std::vector<Question> read_questions(std::istream& in) {
  std::vector<Question> questions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int i = 0; i < 4; ++i) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        throw InputError("question line " + std::to_string(line_no) + ": expected 5 fields");
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));

    std::vector<ConditionExpr> conditions;
    std::string_view text = fields[3];
    std::size_t pos = 0;
    try {
      while (true) {
        conditions.push_back(parse_condition_at(text, pos));
        skip_spaces(text, pos);
        if (pos == text.size()) break;
        if (text[pos] != ';') throw InputError("expected ';' between conditions");
        ++pos;
      }
    } catch (const InputError& e) {
      throw InputError("question line " + std::to_string(line_no) + ": " + e.what());
    }
    std::sort(conditions.begin(), conditions.end());
    if (std::adjacent_find(conditions.begin(), conditions.end()) != conditions.end()) {
      throw InputError("question line " + std::to_string(line_no) + ": duplicate condition");
    }
    questions.push_back(Question{fields[0], Iri(fields[1]), std::move(conditions), fields[4],
                                 fields[2]});
  }
  return questions;
}

}  // namespace dlm
