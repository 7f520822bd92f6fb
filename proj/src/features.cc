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

#include "dlm/features.h"

#include <algorithm>
#include <cmath>

namespace dlm {
namespace {

struct Neighbourhood {
  std::set<Iri> in;
  std::set<Iri> out;
};

Neighbourhood neighbourhood(const Ontology& o, const Iri& individual) {
  Neighbourhood n;
  for (const auto& [role, source] : o.in_links(individual)) n.in.insert(source);
  for (const auto& [role, target] : o.out_links(individual)) n.out.insert(target);
  return n;
}

Neighbourhood concept_neighbourhood(const Ontology& o, const Iri& cls) {
  Neighbourhood n;
  for (const Iri& i : o.instances_of(ConditionExpr::named_concept(cls))) {
    Neighbourhood part = neighbourhood(o, i);
    n.in.insert(part.in.begin(), part.in.end());
    n.out.insert(part.out.begin(), part.out.end());
  }
  return n;
}

double jaccard(const std::set<Iri>& a, const std::set<Iri>& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  std::size_t total = a.size() + b.size() - common;
  return total == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(total);
}

double coherence_of(const Neighbourhood& p, const Neighbourhood& q) {
  return jaccard(p.in, q.in) + jaccard(p.out, q.out);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double popularity_individual(const Ontology& o, const Iri& individual) {
  if (o.individuals().empty()) throw InputError("popularity undefined: ontology has no individuals");
  double ratio = static_cast<double>(o.in_links(individual).size()) /
                 static_cast<double>(o.individuals().size());
  return std::min(ratio, 1.0);
}

ConditionPopularity popularity_condition(const Ontology& o, const ConditionExpr& condition) {
  std::set<Iri> members = o.instances_of(condition);
  if (members.empty()) return {0.0, true};
  double total = 0.0;
  for (const Iri& i : members) total += popularity_individual(o, i);
  return {total / static_cast<double>(members.size()), false};
}

double popularity_question(const Ontology& o, const Question& q, std::uint32_t* flags) {
  if (q.conditions.empty()) throw InvariantError("question " + q.id + " has no conditions");
  double total = 0.0;
  for (const ConditionExpr& c : q.conditions) {
    ConditionPopularity p = popularity_condition(o, c);
    if (p.sparse && flags != nullptr) *flags |= kSparseCondition;
    total += p.value;
  }
  return total / static_cast<double>(q.conditions.size());
}

AnswerSpaceSummary answer_space_summary(const Ontology& o, const Question& q) {
  if (q.conditions.empty()) throw InvariantError("question " + q.id + " has no conditions");
  const std::size_t everyone = o.individuals().size();
  if (everyone == 0) throw InputError("answer space undefined: ontology has no individuals");

  AnswerSpaceSummary summary;
  double total = 0.0;
  for (const ConditionExpr& c : q.conditions) {
    RelativeAnswerSpace ras{c, o.instances_of(c).size(), 0.0, 0};
    std::size_t denominator = everyone;
    if (c.kind() != ConditionKind::kNamedConcept) {
      std::optional<Iri> domain = o.domain_of(*c.role());
      std::size_t domain_size =
          domain ? o.instances_of(ConditionExpr::named_concept(*domain)).size() : 0;
      if (domain_size == 0) {
        ras.flags |= kDomainFallback;
      } else {
        denominator = domain_size;
      }
    }
    ras.raspace = static_cast<double>(ras.aspace) / static_cast<double>(denominator);
    if (ras.raspace > 1.0) {
      // Membership in the domain is not inferred, so satisfying individuals
      // may lie outside it.
      ras.raspace = 1.0;
      ras.flags |= kAnswerSpaceClamped;
    }
    total += ras.raspace;
    summary.per_condition.push_back(std::move(ras));
  }
  summary.overall = total / static_cast<double>(q.conditions.size());
  return summary;
}

double selectivity_ex(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("answer space must lie in [0, 1]");
  if (x <= 0.1) return 1.0 - x / 0.1;
  if (x <= 0.5) return (x - 0.1) / 0.4;
  return 1.0 - (x - 0.5) / 0.5;
}

double selectivity_bg(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("answer space must lie in [0, 1]");
  return x;
}

double coherence_pair(const Ontology& o, const Iri& p, const Iri& q) {
  return coherence_of(neighbourhood(o, p), neighbourhood(o, q));
}

CoherenceResult coherence_question(const Ontology& o, const Question& q) {
  std::set<Iri> individuals;
  std::set<Iri> concepts;
  for (const ConditionExpr& c : q.conditions) {
    switch (c.kind()) {
      case ConditionKind::kNamedConcept:
        concepts.insert(*c.concept_iri());
        break;
      case ConditionKind::kExistsRoleIndividual:
        individuals.insert(c.filler_iri());
        break;
      case ConditionKind::kExistsRoleConcept:
        concepts.insert(c.filler_iri());
        break;
      case ConditionKind::kExistsDataValue:
        break;
    }
  }
  std::vector<Neighbourhood> entities;
  for (const Iri& i : individuals) entities.push_back(neighbourhood(o, i));
  for (const Iri& c : concepts) entities.push_back(concept_neighbourhood(o, c));
  if (entities.size() < 2) return {0.0, true};

  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < entities.size(); ++a) {
    for (std::size_t b = a + 1; b < entities.size(); ++b) {
      total += coherence_of(entities[a], entities[b]);
      ++pairs;
    }
  }
  return {total / static_cast<double>(pairs), false};
}

double depth_ratio(const Ontology& o, const Iri& key, const Iri& predicate) {
  std::vector<Iri> chain = o.concept_chain_through(key, predicate);
  auto it = std::find(chain.begin(), chain.end(), predicate);
  if (it == chain.end()) throw InvariantError("chain does not contain its predicate");
  auto from_top = static_cast<double>(chain.end() - it);
  return from_top / static_cast<double>(chain.size());
}

std::vector<Iri> specificity_predicates(const Question& q) {
  std::set<Iri> predicates;
  for (const ConditionExpr& c : q.conditions) {
    if (c.kind() == ConditionKind::kNamedConcept) {
      predicates.insert(*c.concept_iri());
    } else {
      predicates.insert(*c.role());
    }
  }
  return {predicates.begin(), predicates.end()};
}

double specificity_question(const Ontology& o, const Question& q) {
  std::vector<Iri> predicates = specificity_predicates(q);
  if (predicates.empty()) throw InputError("question " + q.id + " has no predicates");
  double total = 0.0;
  double best = 0.0;
  for (const Iri& p : predicates) {
    double r = depth_ratio(o, q.key, p);
    total += r;
    best = std::max(best, r);
  }
  return total / static_cast<double>(predicates.size()) * best;
}

FeatureVector feature_vector(const Ontology& o, const Question& q) {
  FeatureVector fv;
  fv.popularity = clamp01(popularity_question(o, q, &fv.flags));
  AnswerSpaceSummary space = answer_space_summary(o, q);
  for (const RelativeAnswerSpace& r : space.per_condition) fv.flags |= r.flags;
  double overall = clamp01(space.overall);
  fv.selectivity_ex = selectivity_ex(overall);
  fv.selectivity_bg = selectivity_bg(overall);
  CoherenceResult coherence = coherence_question(o, q);
  if (coherence.degenerate) fv.flags |= kDegenerateCoherence;
  fv.coherence_raw = coherence.value;
  fv.coherence = clamp01(coherence.value / 2.0);
  fv.specificity = clamp01(specificity_question(o, q));
  return fv;
}

}  // namespace dlm
