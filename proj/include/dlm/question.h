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

#ifndef DLM_QUESTION_H_
#define DLM_QUESTION_H_

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dlm/ontology.h"

namespace dlm {

enum class SlotType : std::uint8_t {
  kConcept,         // ?s a ?C
  kRoleIndividual,  // ?s ?R ?o, ?o an individual
  kRoleConcept,     // ?s ?R ?y, ?y a ?C'
  kDataValue,       // ?s ?R "literal"
};

// Generic question shape. Placeholders in the stem template are [?C],
// [?R1]/[?o1] ... numbered per role slot, and [?C1] for concept fillers;
// "a/an" is resolved against the following word.
struct QuestionPattern {
  std::string id;
  std::vector<SlotType> slots;
  std::string stem_template;
};

// Throws InvariantError unless the pattern has 1-4 slots and at most one
// concept slot.
void validate_pattern(const QuestionPattern& pattern);

struct Question {
  std::string id;
  Iri key;
  std::vector<ConditionExpr> conditions;  // sorted, unique, non-empty
  std::string stem;
  std::string pattern_id;
};

// P1 {C}, P2 {C, ∃R.{o}}, P3 {C, ∃R.{o}, ∃R'.{o'}}, P4 {C, ∃R.C'},
// P5 {C, ∃R.{o}, ∃R_data.{lit}}.
const std::vector<QuestionPattern>& builtin_patterns();
const QuestionPattern& builtin_pattern(std::string_view id);

// All bindings of the pattern with a shared key individual. ?C binds to the
// key's asserted concepts, or owl:Thing when it has none. Condition sets
// are deduplicated across keys (the smallest key wins), ordered by key then
// conditions, and truncated to `limit`. Throws InputError for limit == 0.
std::vector<Question> generate(const Ontology& ontology, const QuestionPattern& pattern,
                               std::size_t limit);

// Intersection of instances_of over the question's conditions.
std::set<Iri> answer_set(const Ontology& ontology, const Question& question);

// Human-readable name: rdfs:label, else the local name with underscores as
// spaces (role names are additionally split at camelCase boundaries).
std::string display_name(const Ontology& ontology, const Iri& iri, bool is_role = false);

std::string render_stem(const Ontology& ontology, const QuestionPattern& pattern,
                        const std::vector<ConditionExpr>& slot_bindings);

// Compact condition syntax: concept:<C>, exists:<R>={<o>}, exists:<R>.<C>,
// exists:<R>={"lit"^^<dt>}.
std::string format_condition(const ConditionExpr& condition);
ConditionExpr parse_condition(std::string_view text);

// Tab-separated export: id, key IRI, pattern id, conditions joined by " ; ",
// stem. Lines starting with '#' are comments.
void write_questions(std::ostream& out, const std::vector<Question>& questions);
std::vector<Question> read_questions(std::istream& in);

}  // namespace dlm

#endif  // DLM_QUESTION_H_
