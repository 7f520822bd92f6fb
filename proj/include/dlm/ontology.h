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

#ifndef DLM_ONTOLOGY_H_
#define DLM_ONTOLOGY_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dlm/common.h"

namespace dlm {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

inline constexpr std::string_view kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view kSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kSubPropertyOf =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kRdfsClass = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kDatatypeProperty =
    "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kNamedIndividual =
    "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr std::string_view kThing = "http://www.w3.org/2002/07/owl#Thing";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
}  // namespace vocab

// Absolute identifier. Compared byte-wise, never normalized.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }
  // Fragment after the last '#', '/' or ':'; the whole string if none.
  std::string_view local_name() const;

  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

struct Literal {
  std::string lexical;
  // Always set; plain literals carry xsd:string, tagged ones rdf:langString.
  std::string datatype = std::string(vocab::kXsdString);
  std::string language;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, Literal>;

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class ConditionKind : std::uint8_t {
  kNamedConcept,
  kExistsRoleIndividual,
  kExistsRoleConcept,
  kExistsDataValue,
};

// One question condition. The factories enforce which fields each kind
// carries; ordering is the canonical condition order used everywhere.
class ConditionExpr {
 public:
  static ConditionExpr named_concept(Iri cls);
  static ConditionExpr exists_individual(Iri role, Iri individual);
  static ConditionExpr exists_concept(Iri role, Iri cls);
  static ConditionExpr exists_value(Iri role, Literal value);

  ConditionKind kind() const { return kind_; }
  const std::optional<Iri>& concept_iri() const { return concept_; }
  const std::optional<Iri>& role() const { return role_; }
  const std::optional<Term>& filler() const { return filler_; }

  // Filler accessors; throw InvariantError on the wrong kind.
  const Iri& filler_iri() const;
  const Literal& filler_literal() const;

  friend auto operator<=>(const ConditionExpr&, const ConditionExpr&) = default;

 private:
  ConditionExpr(ConditionKind kind, std::optional<Iri> cls, std::optional<Iri> role,
                std::optional<Term> filler)
      : kind_(kind),
        concept_(std::move(cls)),
        role_(std::move(role)),
        filler_(std::move(filler)) {}

  ConditionKind kind_;
  std::optional<Iri> concept_;
  std::optional<Iri> role_;
  std::optional<Term> filler_;
};

// (role, neighbor) pair of an object-role triple seen from one endpoint.
using Link = std::pair<Iri, Iri>;

struct BuildDiagnostics {
  std::size_t undeclared_entities = 0;
  std::size_t ignored_triples = 0;
  std::vector<std::string> messages;
};

// Immutable TBox + ABox with closure and adjacency indexes. Build with
// Ontology::build; every query is const and safe to call concurrently.
class Ontology {
 public:
  // Declarations are read from rdf:type triples against the OWL/RDFS
  // vocabulary; referenced-but-undeclared entities are auto-declared and
  // counted in diagnostics(). Throws InputError on subsumption cycles and
  // role-kind clashes.
  static Ontology build(const std::vector<Triple>& triples);

  const std::set<Iri>& concepts() const { return concepts_; }
  const std::set<Iri>& object_roles() const { return object_roles_; }
  const std::set<Iri>& data_roles() const { return data_roles_; }
  const std::set<Iri>& individuals() const { return individuals_; }
  // Direct (sub, super) edges as asserted.
  const std::set<std::pair<Iri, Iri>>& sub_concept_edges() const { return sub_concept_of_; }
  const std::set<std::pair<Iri, Iri>>& sub_role_edges() const { return sub_role_of_; }
  const std::map<Iri, Iri>& role_domains() const { return role_domain_; }
  const std::map<Iri, Iri>& role_ranges() const { return role_range_; }
  const std::map<Iri, std::string>& labels() const { return labels_; }
  // ABox triples, sorted: concept assertions use rdf:type as predicate.
  const std::vector<Triple>& abox() const { return abox_; }
  const BuildDiagnostics& diagnostics() const { return diagnostics_; }

  bool is_concept(const Iri& iri) const;  // includes owl:Thing
  bool is_role(const Iri& iri) const;
  bool is_individual(const Iri& iri) const { return individuals_.contains(iri); }

  // Declared domain of the role or, failing that, of its nearest super-role.
  std::optional<Iri> domain_of(const Iri& role) const;
  std::optional<std::string> label_of(const Iri& iri) const;

  // Reflexive-transitive subsumption.
  bool subsumed_by(const Iri& sub, const Iri& super) const;

  std::set<Iri> instances_of(const ConditionExpr& condition) const;

  const std::set<Link>& in_links(const Iri& individual) const;
  const std::set<Link>& out_links(const Iri& individual) const;
  const std::vector<std::pair<Iri, Literal>>& data_values(const Iri& individual) const;
  const std::set<Iri>& asserted_concepts(const Iri& individual) const;

  // Concepts satisfied by the individual: asserted ones and their
  // superconcepts, owl:Thing excluded.
  std::set<Iri> concepts_satisfied_by(const Iri& individual) const;
  // Roles R with R(x, i) or R(i, x) entailed for x = individual, including
  // data roles on the subject side.
  std::set<Iri> roles_incident_to(const Iri& individual) const;

  // Largest subsumption chain through `predicate` among the concepts
  // satisfied by (or roles incident to) `key`, most specific first. Equal
  // lengths are ordered lexicographically on the chain from its most
  // specific end. owl:Thing yields the singleton chain.
  std::vector<Iri> concept_chain_through(const Iri& key, const Iri& predicate) const;

  // Content equality; diagnostics are not compared.
  bool operator==(const Ontology& other) const;

 private:
  Ontology() = default;

  void check_individual(const Iri& individual) const;
  void build_closures();
  std::vector<Iri> longest_chain(const std::set<Iri>& allowed, const Iri& predicate,
                                 const std::map<Iri, std::set<Iri>>& parents,
                                 const std::map<Iri, std::set<Iri>>& children) const;

  std::set<Iri> concepts_;
  std::set<Iri> object_roles_;
  std::set<Iri> data_roles_;
  std::set<Iri> individuals_;
  std::set<std::pair<Iri, Iri>> sub_concept_of_;
  std::set<std::pair<Iri, Iri>> sub_role_of_;
  std::map<Iri, Iri> role_domain_;
  std::map<Iri, Iri> role_range_;
  std::map<Iri, std::string> labels_;
  std::vector<Triple> abox_;
  BuildDiagnostics diagnostics_;

  // Derived indexes.
  std::map<Iri, std::set<Iri>> concept_parents_;
  std::map<Iri, std::set<Iri>> concept_children_;
  std::map<Iri, std::set<Iri>> role_parents_;
  std::map<Iri, std::set<Iri>> role_children_;
  std::map<Iri, std::set<Iri>> concept_ancestors_;  // reflexive
  std::map<Iri, std::set<Iri>> role_descendants_;   // reflexive
  std::map<Iri, std::set<Iri>> role_ancestors_;     // reflexive
  std::map<Iri, std::set<Iri>> members_;            // closed under subsumption
  std::map<Iri, std::set<Iri>> types_;
  std::map<Iri, std::set<Link>> out_;
  std::map<Iri, std::set<Link>> in_;
  std::map<Iri, std::vector<std::pair<Iri, Literal>>> data_;
};

}  // namespace dlm

#endif  // DLM_ONTOLOGY_H_
