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

#ifndef DLM_FEATURES_H_
#define DLM_FEATURES_H_

#include <cstdint>
#include <set>
#include <vector>

#include "dlm/common.h"
#include "dlm/ontology.h"
#include "dlm/question.h"

namespace dlm {

// Bit flags recording where a feature fell back to a default value.
enum FeatureFlag : std::uint32_t {
  kSparseCondition = 1u << 0,       // a condition with no satisfying individual
  kDegenerateCoherence = 1u << 1,   // fewer than two entities in the question
  kDomainFallback = 1u << 2,        // role restriction without a usable domain
  kAnswerSpaceClamped = 1u << 3,    // relative answer space exceeded 1
};

struct FeatureVector {
  double popularity = 0.0;
  double selectivity_ex = 0.0;
  double selectivity_bg = 0.0;
  double coherence = 0.0;      // rescaled to [0, 1]
  double coherence_raw = 0.0;  // Jaccard sum in [0, 2]
  double specificity = 0.0;
  std::uint32_t flags = 0;

  FeatureArray values() const {
    return {popularity, selectivity_ex, selectivity_bg, coherence, specificity};
  }
};

// |in_links(i)| / |individuals|, capped at 1. Throws InputError when the
// ontology has no individuals.
double popularity_individual(const Ontology& o, const Iri& individual);

struct ConditionPopularity {
  double value = 0.0;
  bool sparse = false;
};

// Mean individual popularity over instances_of(condition).
ConditionPopularity popularity_condition(const Ontology& o, const ConditionExpr& condition);

// Mean of popularity_condition over the question's conditions.
double popularity_question(const Ontology& o, const Question& q,
                           std::uint32_t* flags = nullptr);

struct RelativeAnswerSpace {
  ConditionExpr condition;
  std::size_t aspace = 0;
  double raspace = 0.0;
  std::uint32_t flags = 0;
};

struct AnswerSpaceSummary {
  std::vector<RelativeAnswerSpace> per_condition;
  double overall = 0.0;
};

// Concepts are measured against owl:Thing, role restrictions against the
// role's domain, inherited from the nearest super-role when undeclared
// (owl:Thing if no domain is found or the domain is empty).
AnswerSpaceSummary answer_space_summary(const Ontology& o, const Question& q);

// Expert selectivity curve through (0,1), (0.1,0), (0.5,1), (1,0).
double selectivity_ex(double overall_answer_space);
// Beginner selectivity: identity on [0, 1].
double selectivity_bg(double overall_answer_space);

// Jaccard(in-neighbours) + Jaccard(out-neighbours); empty unions add 0.
double coherence_pair(const Ontology& o, const Iri& p, const Iri& q);

struct CoherenceResult {
  double value = 0.0;  // in [0, 2]
  bool degenerate = false;
};

// Mean pairwise coherence over the individual fillers and named concepts of
// the question. A concept enters with the union of its instances'
// neighbourhoods.
CoherenceResult coherence_question(const Ontology& o, const Question& q);

// Position of the predicate counted from the top of its chain through the
// key, divided by the chain length.
double depth_ratio(const Ontology& o, const Iri& key, const Iri& predicate);

// Concepts and roles of the question whose depth ratios make up specificity:
// named concepts and the roles of every restriction.
std::vector<Iri> specificity_predicates(const Question& q);

// mean(depth ratios) * max(depth ratios).
double specificity_question(const Ontology& o, const Question& q);

FeatureVector feature_vector(const Ontology& o, const Question& q);

}  // namespace dlm

#endif  // DLM_FEATURES_H_
