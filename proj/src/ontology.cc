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

#include "dlm/ontology.h"

#include <algorithm>
#include <functional>

namespace dlm {
namespace {

bool in_namespace(const std::string& iri, std::string_view ns) {
  return iri.size() > ns.size() && std::string_view(iri).substr(0, ns.size()) == ns;
}

bool is_vocabulary(const Iri& iri) {
  const std::string& s = iri.str();
  return in_namespace(s, vocab::kRdf) || in_namespace(s, vocab::kRdfs) ||
         in_namespace(s, vocab::kOwl);
}

const std::set<Link>& empty_links() {
  static const std::set<Link> kEmpty;
  return kEmpty;
}

// Reflexive-transitive closure over an acyclic parent map.
std::map<Iri, std::set<Iri>> closure(const std::set<Iri>& nodes,
                                     const std::map<Iri, std::set<Iri>>& next) {
  std::map<Iri, std::set<Iri>> result;
  std::function<const std::set<Iri>&(const Iri&)> visit = [&](const Iri& node) -> const std::set<Iri>& {
    if (auto it = result.find(node); it != result.end()) return it->second;
    std::set<Iri> reach{node};
    if (auto it = next.find(node); it != next.end()) {
      for (const Iri& n : it->second) {
        const std::set<Iri>& sub = visit(n);
        reach.insert(sub.begin(), sub.end());
      }
    }
    return result.emplace(node, std::move(reach)).first->second;
  };
  for (const Iri& n : nodes) visit(n);
  return result;
}

void reject_cycles(const std::set<Iri>& nodes, const std::map<Iri, std::set<Iri>>& parents,
                   std::string_view relation) {
  enum class Mark { kNone, kActive, kDone };
  std::map<Iri, Mark> marks;
  std::function<void(const Iri&)> visit = [&](const Iri& node) {
    Mark& m = marks[node];
    if (m == Mark::kDone) return;
    if (m == Mark::kActive) {
      throw InputError("cycle detected in " + std::string(relation) + " through <" +
                       node.str() + ">");
    }
    m = Mark::kActive;
    if (auto it = parents.find(node); it != parents.end()) {
      for (const Iri& p : it->second) visit(p);
    }
    marks[node] = Mark::kDone;
  };
  for (const Iri& n : nodes) visit(n);
}

template <typename Less>
bool better_chain(const std::vector<Iri>& candidate, const std::vector<Iri>& best, Less less) {
  if (candidate.size() != best.size()) return candidate.size() > best.size();
  return less(candidate, best);
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw InputError("IRI must be non-empty");
}

std::string_view Iri::local_name() const {
  std::string_view s = value_;
  for (char sep : {'#', '/', ':'}) {
    auto pos = s.rfind(sep);
    if (pos != std::string_view::npos && pos + 1 < s.size()) return s.substr(pos + 1);
  }
  return s;
}

ConditionExpr ConditionExpr::named_concept(Iri cls) {
  return ConditionExpr(ConditionKind::kNamedConcept, std::move(cls), std::nullopt,
                       std::nullopt);
}

ConditionExpr ConditionExpr::exists_individual(Iri role, Iri individual) {
  return ConditionExpr(ConditionKind::kExistsRoleIndividual, std::nullopt, std::move(role),
                       Term(std::move(individual)));
}

ConditionExpr ConditionExpr::exists_concept(Iri role, Iri cls) {
  return ConditionExpr(ConditionKind::kExistsRoleConcept, std::nullopt, std::move(role),
                       Term(std::move(cls)));
}

ConditionExpr ConditionExpr::exists_value(Iri role, Literal value) {
  return ConditionExpr(ConditionKind::kExistsDataValue, std::nullopt, std::move(role),
                       Term(std::move(value)));
}

const Iri& ConditionExpr::filler_iri() const {
  if (!filler_ || !std::holds_alternative<Iri>(*filler_)) {
    throw InvariantError("condition has no IRI filler");
  }
  return std::get<Iri>(*filler_);
}

const Literal& ConditionExpr::filler_literal() const {
  if (!filler_ || !std::holds_alternative<Literal>(*filler_)) {
    throw InvariantError("condition has no literal filler");
  }
  return std::get<Literal>(*filler_);
}

Ontology Ontology::build(const std::vector<Triple>& triples) {
  Ontology o;
  BuildDiagnostics& diag = o.diagnostics_;

  std::set<Iri> auto_declared;
  auto declare = [&](std::set<Iri>& into, const Iri& iri, std::string_view what) {
    if (into.insert(iri).second && !auto_declared.contains(iri)) {
      auto_declared.insert(iri);
      ++diag.undeclared_entities;
      diag.messages.push_back("undeclared " + std::string(what) + " <" + iri.str() + ">");
    }
  };
  auto object_iri = [](const Triple& t) -> const Iri& {
    if (!std::holds_alternative<Iri>(t.object)) {
      throw InputError("expected an IRI object for <" + t.predicate.str() + "> on <" +
                       t.subject.str() + ">");
    }
    return std::get<Iri>(t.object);
  };

  std::vector<const Triple*> concept_assertions;
  std::vector<const Triple*> role_assertions;
  std::vector<std::pair<Iri, Iri>> sub_concepts, sub_roles, domains, ranges;

  // Pass 1: explicit declarations; everything else is deferred.
  for (const Triple& t : triples) {
    const std::string& p = t.predicate.str();
    if (p == vocab::kType) {
      const Iri& type = object_iri(t);
      const std::string& ts = type.str();
      if (ts == vocab::kOwlClass || ts == vocab::kRdfsClass) {
        o.concepts_.insert(t.subject);
      } else if (ts == vocab::kObjectProperty) {
        o.object_roles_.insert(t.subject);
      } else if (ts == vocab::kDatatypeProperty) {
        o.data_roles_.insert(t.subject);
      } else if (ts == vocab::kNamedIndividual || ts == vocab::kThing) {
        o.individuals_.insert(t.subject);
      } else if (is_vocabulary(type)) {
        ++diag.ignored_triples;
      } else {
        concept_assertions.push_back(&t);
      }
    } else if (p == vocab::kSubClassOf) {
      sub_concepts.emplace_back(t.subject, object_iri(t));
    } else if (p == vocab::kSubPropertyOf) {
      sub_roles.emplace_back(t.subject, object_iri(t));
    } else if (p == vocab::kDomain) {
      domains.emplace_back(t.subject, object_iri(t));
    } else if (p == vocab::kRange) {
      ranges.emplace_back(t.subject, object_iri(t));
    } else if (p == vocab::kLabel) {
      if (const auto* lit = std::get_if<Literal>(&t.object)) {
        auto [it, inserted] = o.labels_.emplace(t.subject, lit->lexical);
        if (!inserted && lit->lexical < it->second) it->second = lit->lexical;
      } else {
        ++diag.ignored_triples;
      }
    } else if (is_vocabulary(t.predicate)) {
      ++diag.ignored_triples;
    } else {
      role_assertions.push_back(&t);
    }
  }

  for (const Iri& r : o.object_roles_) {
    if (o.data_roles_.contains(r)) {
      throw InputError("<" + r.str() + "> declared as both object and datatype property");
    }
  }

  // Undeclared roles take their kind from how the ABox uses them.
  std::map<Iri, bool> used_with_literal;
  for (const Triple* t : role_assertions) {
    bool literal = std::holds_alternative<Literal>(t->object);
    if (o.object_roles_.contains(t->predicate) && literal) {
      throw InputError("object property <" + t->predicate.str() + "> used with a literal");
    }
    if (o.data_roles_.contains(t->predicate) && !literal) {
      throw InputError("datatype property <" + t->predicate.str() + "> used with an IRI");
    }
    auto [it, inserted] = used_with_literal.emplace(t->predicate, literal);
    if (!inserted && it->second != literal) {
      throw InputError("property <" + t->predicate.str() +
                       "> used with both literal and IRI objects");
    }
  }
  for (const auto& [role, literal] : used_with_literal) {
    if (o.is_role(role)) continue;
    declare(literal ? o.data_roles_ : o.object_roles_, role,
            literal ? "datatype property" : "object property");
  }

  for (const auto& [sub, super] : sub_roles) {
    if (sub == super) continue;
    bool sub_known = o.is_role(sub), super_known = o.is_role(super);
    if (!sub_known && !super_known) {
      declare(o.object_roles_, sub, "object property");
      declare(o.object_roles_, super, "object property");
    } else if (!sub_known) {
      declare(o.data_roles_.contains(super) ? o.data_roles_ : o.object_roles_, sub, "property");
    } else if (!super_known) {
      declare(o.data_roles_.contains(sub) ? o.data_roles_ : o.object_roles_, super, "property");
    }
    if (o.data_roles_.contains(sub) != o.data_roles_.contains(super)) {
      throw InputError("subPropertyOf mixes object and datatype properties: <" + sub.str() +
                       "> and <" + super.str() + ">");
    }
    o.sub_role_of_.emplace(sub, super);
  }

  auto declare_concept = [&](const Iri& c) {
    if (c.str() != vocab::kThing) declare(o.concepts_, c, "class");
  };
  for (const auto& [sub, super] : sub_concepts) {
    declare_concept(sub);
    declare_concept(super);
    if (sub == super || super.str() == vocab::kThing || sub.str() == vocab::kThing) continue;
    o.sub_concept_of_.emplace(sub, super);
  }

  auto record_axis = [&](const std::vector<std::pair<Iri, Iri>>& axioms, std::map<Iri, Iri>& into,
                         bool object_only, std::string_view what) {
    for (const auto& [role, cls] : axioms) {
      if (!o.is_role(role)) declare(o.object_roles_, role, "object property");
      if (object_only && o.data_roles_.contains(role)) continue;  // datatype ranges
      declare_concept(cls);
      auto [it, inserted] = into.emplace(role, cls);
      if (!inserted && it->second != cls) {
        diag.messages.push_back("multiple " + std::string(what) + "s for <" + role.str() +
                                ">, keeping the smallest");
        if (cls < it->second) it->second = cls;
      }
    }
  };
  record_axis(domains, o.role_domain_, false, "domain");
  record_axis(ranges, o.role_range_, true, "range");

  std::set<Triple> abox;
  for (const Triple* t : concept_assertions) {
    declare(o.individuals_, t->subject, "individual");
    declare_concept(std::get<Iri>(t->object));
    abox.insert(*t);
  }
  for (const Triple* t : role_assertions) {
    declare(o.individuals_, t->subject, "individual");
    if (const auto* target = std::get_if<Iri>(&t->object)) {
      declare(o.individuals_, *target, "individual");
    }
    abox.insert(*t);
  }
  o.abox_.assign(abox.begin(), abox.end());

  o.build_closures();
  return o;
}

void Ontology::build_closures() {
  for (const Iri& c : concepts_) {
    concept_parents_[c];
    concept_children_[c];
  }
  for (const auto& [sub, super] : sub_concept_of_) {
    concept_parents_[sub].insert(super);
    concept_children_[super].insert(sub);
  }
  std::set<Iri> roles = object_roles_;
  roles.insert(data_roles_.begin(), data_roles_.end());
  for (const Iri& r : roles) {
    role_parents_[r];
    role_children_[r];
  }
  for (const auto& [sub, super] : sub_role_of_) {
    role_parents_[sub].insert(super);
    role_children_[super].insert(sub);
  }
  reject_cycles(concepts_, concept_parents_, "subClassOf");
  reject_cycles(roles, role_parents_, "subPropertyOf");

  concept_ancestors_ = closure(concepts_, concept_parents_);
  role_ancestors_ = closure(roles, role_parents_);
  role_descendants_ = closure(roles, role_children_);

  for (const Iri& c : concepts_) members_[c];
  for (const Iri& i : individuals_) {
    types_[i];
    out_[i];
    in_[i];
    data_[i];
  }
  for (const Triple& t : abox_) {
    if (t.predicate.str() == vocab::kType) {
      const Iri& c = std::get<Iri>(t.object);
      types_[t.subject].insert(c);
      for (const Iri& a : concept_ancestors_.at(c)) members_[a].insert(t.subject);
    } else if (const auto* target = std::get_if<Iri>(&t.object)) {
      out_[t.subject].emplace(t.predicate, *target);
      in_[*target].emplace(t.predicate, t.subject);
    } else {
      data_[t.subject].emplace_back(t.predicate, std::get<Literal>(t.object));
    }
  }
}

bool Ontology::is_concept(const Iri& iri) const {
  return iri.str() == vocab::kThing || concepts_.contains(iri);
}

bool Ontology::is_role(const Iri& iri) const {
  return object_roles_.contains(iri) || data_roles_.contains(iri);
}

std::optional<Iri> Ontology::domain_of(const Iri& role) const {
  // Breadth-first over super-roles: the nearest declared domain wins; ties
  // go to the super-role with the smallest IRI.
  std::set<Iri> level{role};
  std::set<Iri> seen{role};
  while (!level.empty()) {
    for (const Iri& r : level) {
      if (auto it = role_domain_.find(r); it != role_domain_.end()) return it->second;
    }
    std::set<Iri> next;
    for (const Iri& r : level) {
      auto parents = role_parents_.find(r);
      if (parents == role_parents_.end()) continue;
      for (const Iri& p : parents->second) {
        if (seen.insert(p).second) next.insert(p);
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

std::optional<std::string> Ontology::label_of(const Iri& iri) const {
  if (auto it = labels_.find(iri); it != labels_.end()) return it->second;
  return std::nullopt;
}

bool Ontology::subsumed_by(const Iri& sub, const Iri& super) const {
  if (super.str() == vocab::kThing) return is_concept(sub);
  if (auto it = concept_ancestors_.find(sub); it != concept_ancestors_.end()) {
    return it->second.contains(super);
  }
  if (auto it = role_ancestors_.find(sub); it != role_ancestors_.end()) {
    return it->second.contains(super);
  }
  return false;
}

void Ontology::check_individual(const Iri& individual) const {
  if (!individuals_.contains(individual)) {
    throw InputError("unknown individual <" + individual.str() + ">");
  }
}

std::set<Iri> Ontology::instances_of(const ConditionExpr& condition) const {
  auto require_role = [&](const Iri& role, const std::set<Iri>& kind) {
    if (!kind.contains(role)) throw InputError("unknown role <" + role.str() + ">");
  };
  auto require_concept = [&](const Iri& c) {
    if (!is_concept(c)) throw InputError("unknown concept <" + c.str() + ">");
  };
  auto sources_via = [&](const Iri& role, const Iri& target, std::set<Iri>& out) {
    const std::set<Iri>& accepted = role_descendants_.at(role);
    for (const auto& [r, source] : in_.at(target)) {
      if (accepted.contains(r)) out.insert(source);
    }
  };

  switch (condition.kind()) {
    case ConditionKind::kNamedConcept: {
      const Iri& c = *condition.concept_iri();
      require_concept(c);
      if (c.str() == vocab::kThing) return individuals_;
      return members_.at(c);
    }
    case ConditionKind::kExistsRoleIndividual: {
      const Iri& role = *condition.role();
      const Iri& filler = condition.filler_iri();
      require_role(role, object_roles_);
      check_individual(filler);
      std::set<Iri> result;
      sources_via(role, filler, result);
      return result;
    }
    case ConditionKind::kExistsRoleConcept: {
      const Iri& role = *condition.role();
      require_role(role, object_roles_);
      std::set<Iri> result;
      for (const Iri& y : instances_of(ConditionExpr::named_concept(condition.filler_iri()))) {
        sources_via(role, y, result);
      }
      return result;
    }
    case ConditionKind::kExistsDataValue: {
      const Iri& role = *condition.role();
      require_role(role, data_roles_);
      const std::set<Iri>& accepted = role_descendants_.at(role);
      const Literal& value = condition.filler_literal();
      std::set<Iri> result;
      for (const auto& [subject, values] : data_) {
        for (const auto& [r, lit] : values) {
          if (lit == value && accepted.contains(r)) {
            result.insert(subject);
            break;
          }
        }
      }
      return result;
    }
  }
  throw InvariantError("unhandled condition kind");
}

const std::set<Link>& Ontology::in_links(const Iri& individual) const {
  check_individual(individual);
  auto it = in_.find(individual);
  return it == in_.end() ? empty_links() : it->second;
}

const std::set<Link>& Ontology::out_links(const Iri& individual) const {
  check_individual(individual);
  auto it = out_.find(individual);
  return it == out_.end() ? empty_links() : it->second;
}

const std::vector<std::pair<Iri, Literal>>& Ontology::data_values(const Iri& individual) const {
  check_individual(individual);
  return data_.at(individual);
}

const std::set<Iri>& Ontology::asserted_concepts(const Iri& individual) const {
  check_individual(individual);
  return types_.at(individual);
}

std::set<Iri> Ontology::concepts_satisfied_by(const Iri& individual) const {
  std::set<Iri> result;
  for (const Iri& t : asserted_concepts(individual)) {
    const std::set<Iri>& anc = concept_ancestors_.at(t);
    result.insert(anc.begin(), anc.end());
  }
  return result;
}

std::set<Iri> Ontology::roles_incident_to(const Iri& individual) const {
  std::set<Iri> result;
  auto add = [&](const Iri& role) {
    const std::set<Iri>& anc = role_ancestors_.at(role);
    result.insert(anc.begin(), anc.end());
  };
  for (const auto& [role, target] : out_links(individual)) add(role);
  for (const auto& [role, source] : in_links(individual)) add(role);
  for (const auto& [role, value] : data_values(individual)) add(role);
  return result;
}

std::vector<Iri> Ontology::concept_chain_through(const Iri& key, const Iri& predicate) const {
  check_individual(key);
  if (predicate.str() == vocab::kThing) return {predicate};
  if (concepts_.contains(predicate)) {
    std::set<Iri> allowed = concepts_satisfied_by(key);
    if (!allowed.contains(predicate)) {
      throw InputError("<" + key.str() + "> does not satisfy <" + predicate.str() + ">");
    }
    return longest_chain(allowed, predicate, concept_parents_, concept_children_);
  }
  if (is_role(predicate)) {
    std::set<Iri> allowed = roles_incident_to(key);
    if (!allowed.contains(predicate)) {
      throw InputError("<" + predicate.str() + "> is not incident to <" + key.str() + ">");
    }
    return longest_chain(allowed, predicate, role_parents_, role_children_);
  }
  throw InputError("unknown predicate <" + predicate.str() + ">");
}

std::vector<Iri> Ontology::longest_chain(const std::set<Iri>& allowed, const Iri& predicate,
                                         const std::map<Iri, std::set<Iri>>& parents,
                                         const std::map<Iri, std::set<Iri>>& children) const {
  std::map<Iri, std::vector<Iri>> up_memo, down_memo;
  auto less = std::less<std::vector<Iri>>();

  // Path from `node` to the top, node first.
  std::function<const std::vector<Iri>&(const Iri&)> up = [&](const Iri& node) -> const std::vector<Iri>& {
    if (auto it = up_memo.find(node); it != up_memo.end()) return it->second;
    std::vector<Iri> best{node};
    for (const Iri& parent : parents.at(node)) {
      if (!allowed.contains(parent)) continue;
      std::vector<Iri> candidate{node};
      const std::vector<Iri>& rest = up(parent);
      candidate.insert(candidate.end(), rest.begin(), rest.end());
      if (better_chain(candidate, best, less)) best = std::move(candidate);
    }
    return up_memo.emplace(node, std::move(best)).first->second;
  };
  // Path from the most specific element down to `node`, node last.
  std::function<const std::vector<Iri>&(const Iri&)> down = [&](const Iri& node) -> const std::vector<Iri>& {
    if (auto it = down_memo.find(node); it != down_memo.end()) return it->second;
    std::vector<Iri> best{node};
    for (const Iri& child : children.at(node)) {
      if (!allowed.contains(child)) continue;
      std::vector<Iri> candidate = down(child);
      candidate.push_back(node);
      if (better_chain(candidate, best, less)) best = std::move(candidate);
    }
    return down_memo.emplace(node, std::move(best)).first->second;
  };

  std::vector<Iri> chain = down(predicate);
  const std::vector<Iri>& upper = up(predicate);
  chain.insert(chain.end(), upper.begin() + 1, upper.end());
  return chain;
}

bool Ontology::operator==(const Ontology& other) const {
  return concepts_ == other.concepts_ && object_roles_ == other.object_roles_ &&
         data_roles_ == other.data_roles_ && individuals_ == other.individuals_ &&
         sub_concept_of_ == other.sub_concept_of_ && sub_role_of_ == other.sub_role_of_ &&
         role_domain_ == other.role_domain_ && role_range_ == other.role_range_ &&
         labels_ == other.labels_ && abox_ == other.abox_;
}

}  // namespace dlm
