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

#include "support/oracle.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>

namespace dlm::testing {
namespace {

const std::string kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const std::string kSubClass = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
const std::string kSubProperty = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
const std::string kDomainIri = "http://www.w3.org/2000/01/rdf-schema#domain";
const std::string kOwlThing = "http://www.w3.org/2002/07/owl#Thing";

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> all = a;
  all.insert(b.begin(), b.end());
  if (all.empty()) return 0.0;
  std::size_t both = 0;
  for (const std::string& x : a) both += b.count(x);
  return static_cast<double>(both) / static_cast<double>(all.size());
}

}  // namespace

OracleCondition to_oracle(const ConditionExpr& c) {
  OracleCondition o;
  switch (c.kind()) {
    case ConditionKind::kNamedConcept:
      o.kind = OracleCondition::kConcept;
      o.filler = c.concept_iri()->str();
      break;
    case ConditionKind::kExistsRoleIndividual:
      o.kind = OracleCondition::kRoleIndividual;
      o.role = c.role()->str();
      o.filler = c.filler_iri().str();
      break;
    case ConditionKind::kExistsRoleConcept:
      o.kind = OracleCondition::kRoleConcept;
      o.role = c.role()->str();
      o.filler = c.filler_iri().str();
      break;
    case ConditionKind::kExistsDataValue:
      o.kind = OracleCondition::kDataValue;
      o.role = c.role()->str();
      o.filler = c.filler_literal().lexical;
      o.datatype = c.filler_literal().datatype;
      o.language = c.filler_literal().language;
      break;
  }
  return o;
}

bool BruteForce::is_vocab(const std::string& iri) const {
  for (const char* ns : {"http://www.w3.org/1999/02/22-rdf-syntax-ns#", "http://www.w3.org/2000/01/rdf-schema#",
                         "http://www.w3.org/2002/07/owl#", "http://www.w3.org/2001/XMLSchema#"}) {
    if (iri.rfind(ns, 0) == 0) return true;
  }
  return false;
}

BruteForce::BruteForce(const std::vector<Triple>& triples) {
  for (const Triple& t : triples) {
    const std::string s = t.subject.str();
    const std::string p = t.predicate.str();
    const Iri* obj = std::get_if<Iri>(&t.object);
    if (p == kRdfType && obj != nullptr) {
      const std::string o = obj->str();
      if (o == "http://www.w3.org/2002/07/owl#Class" || o == "http://www.w3.org/2000/01/rdf-schema#Class") {
        classes_.insert(s);
      } else if (o == "http://www.w3.org/2002/07/owl#ObjectProperty") {
        object_roles_.insert(s);
      } else if (o == "http://www.w3.org/2002/07/owl#DatatypeProperty") {
        data_roles_.insert(s);
      } else if (o == "http://www.w3.org/2002/07/owl#NamedIndividual" || o == kOwlThing) {
        individuals_.insert(s);
      } else if (!is_vocab(o)) {
        types_.insert({s, o});
        classes_.insert(o);
        individuals_.insert(s);
      }
      continue;
    }
    if (p == kSubClass && obj != nullptr) {
      if (s != kOwlThing) classes_.insert(s);
      if (obj->str() != kOwlThing) classes_.insert(obj->str());
      if (s != obj->str() && s != kOwlThing && obj->str() != kOwlThing) class_edges_.insert({s, obj->str()});
      continue;
    }
    if (p == kSubProperty && obj != nullptr) {
      if (s != obj->str()) role_edges_.insert({s, obj->str()});
      continue;
    }
    if (p == kDomainIri && obj != nullptr) {
      auto it = domain_.find(s);
      if (it == domain_.end() || obj->str() < it->second) domain_[s] = obj->str();
      continue;
    }
    if (is_vocab(p)) continue;
    individuals_.insert(s);
    if (obj != nullptr) {
      object_roles_.insert(p);
      individuals_.insert(obj->str());
      object_facts_.insert({s, p, obj->str()});
    } else {
      data_roles_.insert(p);
      data_facts_.insert({s, p, std::get<Literal>(t.object)});
    }
  }
  for (const auto& [sub, super] : role_edges_) {
    if (!data_roles_.contains(sub) && !data_roles_.contains(super)) {
      object_roles_.insert(sub);
      object_roles_.insert(super);
    }
  }

  // Reflexive-transitive closures by naive fixed-point iteration.
  auto close = [](const std::set<std::string>& nodes, const std::set<std::pair<std::string, std::string>>& edges,
                  std::set<std::pair<std::string, std::string>>& closure) {
    for (const std::string& n : nodes) closure.insert({n, n});
    for (const auto& e : edges) {
      closure.insert({e.first, e.first});
      closure.insert({e.second, e.second});
      closure.insert(e);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::pair<std::string, std::string>> added;
      for (const auto& [a, b] : closure) {
        for (const auto& [c, d] : edges) {
          if (b == c && !closure.contains({a, d})) added.push_back({a, d});
        }
      }
      for (auto& x : added) changed |= closure.insert(x).second;
    }
  };
  close(classes_, class_edges_, class_closure_);
  std::set<std::string> roles = object_roles_;
  roles.insert(data_roles_.begin(), data_roles_.end());
  close(roles, role_edges_, role_closure_);
}

bool BruteForce::concept_below(const std::string& sub, const std::string& super) const {
  return class_closure_.contains({sub, super});
}

bool BruteForce::role_below(const std::string& sub, const std::string& super) const {
  return role_closure_.contains({sub, super});
}

bool BruteForce::member(const std::string& x, const std::string& concept_name) const {
  if (!individuals_.contains(x)) return false;
  if (concept_name == kOwlThing) return true;
  for (const auto& [y, c] : types_) {
    if (y == x && concept_below(c, concept_name)) return true;
  }
  return false;
}

std::set<std::string> BruteForce::instances(const OracleCondition& c) const {
  std::set<std::string> out;
  switch (c.kind) {
    case OracleCondition::kConcept:
      for (const std::string& x : individuals_) {
        if (member(x, c.filler)) out.insert(x);
      }
      break;
    case OracleCondition::kRoleIndividual:
      for (const auto& [s, r, o] : object_facts_) {
        if (o == c.filler && role_below(r, c.role)) out.insert(s);
      }
      break;
    case OracleCondition::kRoleConcept:
      for (const auto& [s, r, o] : object_facts_) {
        if (role_below(r, c.role) && member(o, c.filler)) out.insert(s);
      }
      break;
    case OracleCondition::kDataValue:
      for (const auto& [s, r, lit] : data_facts_) {
        if (role_below(r, c.role) && lit.lexical == c.filler && lit.datatype == c.datatype &&
            lit.language == c.language) {
          out.insert(s);
        }
      }
      break;
  }
  return out;
}

std::set<std::string> BruteForce::answers(const std::vector<OracleCondition>& conditions) const {
  std::set<std::string> out;
  for (const std::string& x : individuals_) {
    bool all = true;
    for (const OracleCondition& c : conditions) all = all && instances(c).contains(x);
    if (all) out.insert(x);
  }
  return out;
}

std::size_t BruteForce::in_degree(const std::string& x) const {
  std::set<std::pair<std::string, std::string>> links;
  for (const auto& [s, r, o] : object_facts_) {
    if (o == x) links.insert({r, s});
  }
  return links.size();
}

std::set<std::string> BruteForce::in_neighbours(const std::string& x) const {
  std::set<std::string> out;
  for (const auto& [s, r, o] : object_facts_) {
    if (o == x) out.insert(s);
  }
  return out;
}

std::set<std::string> BruteForce::out_neighbours(const std::string& x) const {
  std::set<std::string> out;
  for (const auto& [s, r, o] : object_facts_) {
    if (s == x) out.insert(o);
  }
  return out;
}

double BruteForce::popularity(const std::vector<OracleCondition>& conditions) const {
  const double n = static_cast<double>(individuals_.size());
  double total = 0.0;
  for (const OracleCondition& c : conditions) {
    std::set<std::string> xs = instances(c);
    if (xs.empty()) continue;
    double sum = 0.0;
    for (const std::string& x : xs) sum += std::min(static_cast<double>(in_degree(x)) / n, 1.0);
    total += sum / static_cast<double>(xs.size());
  }
  return total / static_cast<double>(conditions.size());
}

double BruteForce::overall_answer_space(const std::vector<OracleCondition>& conditions) const {
  double total = 0.0;
  for (const OracleCondition& c : conditions) {
    double denominator = static_cast<double>(individuals_.size());
    if (c.kind != OracleCondition::kConcept) {
      // Nearest super-role (by edge count) that declares a domain.
      std::string best_role;
      std::size_t best_distance = SIZE_MAX;
      for (const auto& [role, dom] : domain_) {
        if (!role_below(c.role, role)) continue;
        std::set<std::string> frontier{c.role};
        std::size_t distance = 0;
        while (!frontier.contains(role)) {
          std::set<std::string> next;
          for (const auto& [a, b] : role_edges_) {
            if (frontier.contains(a)) next.insert(b);
          }
          frontier = next;
          ++distance;
        }
        if (distance < best_distance || (distance == best_distance && role < best_role)) {
          best_distance = distance;
          best_role = role;
        }
      }
      if (!best_role.empty()) {
        std::size_t members = instances({OracleCondition::kConcept, "", domain_.at(best_role), "", ""}).size();
        if (members > 0) denominator = static_cast<double>(members);
      }
    }
    total += std::min(static_cast<double>(instances(c).size()) / denominator, 1.0);
  }
  return total / static_cast<double>(conditions.size());
}

double BruteForce::coherence(const std::vector<OracleCondition>& conditions) const {
  std::set<std::string> inds;
  std::set<std::string> concepts;
  for (const OracleCondition& c : conditions) {
    if (c.kind == OracleCondition::kRoleIndividual) inds.insert(c.filler);
    if (c.kind == OracleCondition::kConcept || c.kind == OracleCondition::kRoleConcept) concepts.insert(c.filler);
  }
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>> entities;
  for (const std::string& i : inds) entities.push_back({in_neighbours(i), out_neighbours(i)});
  for (const std::string& c : concepts) {
    std::set<std::string> in;
    std::set<std::string> out;
    for (const std::string& x : instances({OracleCondition::kConcept, "", c, "", ""})) {
      for (const std::string& y : in_neighbours(x)) in.insert(y);
      for (const std::string& y : out_neighbours(x)) out.insert(y);
    }
    entities.push_back({in, out});
  }
  if (entities.size() < 2) return 0.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < entities.size(); ++a) {
    for (std::size_t b = a + 1; b < entities.size(); ++b) {
      total += jaccard(entities[a].first, entities[b].first) + jaccard(entities[a].second, entities[b].second);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

std::set<std::string> BruteForce::allowed_concepts(const std::string& key) const {
  std::set<std::string> out;
  for (const std::string& c : classes_) {
    if (c != kOwlThing && member(key, c)) out.insert(c);
  }
  return out;
}

std::set<std::string> BruteForce::allowed_roles(const std::string& key) const {
  std::set<std::string> used;
  for (const auto& [s, r, o] : object_facts_) {
    if (s == key || o == key) used.insert(r);
  }
  for (const auto& [s, r, lit] : data_facts_) {
    if (s == key) used.insert(r);
  }
  std::set<std::string> out;
  for (const auto& [sub, super] : role_closure_) {
    if (used.contains(sub)) out.insert(super);
  }
  return out;
}

double BruteForce::chain_ratio(const std::set<std::string>& allowed, const std::string& predicate,
                               const std::set<std::pair<std::string, std::string>>& edges) const {
  std::vector<std::string> pool(allowed.begin(), allowed.end());
  if (pool.size() > 16) throw std::runtime_error("oracle chain pool too large");
  std::size_t best_len = 0;
  std::size_t best_from_top = 0;
  bool ambiguous = false;
  for (std::size_t mask = 1; mask < (std::size_t{1} << pool.size()); ++mask) {
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(pool[i]);
    }
    if (std::find(subset.begin(), subset.end(), predicate) == subset.end()) continue;
    if (subset.size() < best_len) continue;
    std::sort(subset.begin(), subset.end());
    do {
      bool path = true;
      for (std::size_t i = 0; i + 1 < subset.size() && path; ++i) {
        path = edges.contains({subset[i], subset[i + 1]});
      }
      if (path) {
        std::size_t idx = static_cast<std::size_t>(std::find(subset.begin(), subset.end(), predicate) - subset.begin());
        std::size_t from_top = subset.size() - idx;
        if (subset.size() > best_len) {
          best_len = subset.size();
          best_from_top = from_top;
          ambiguous = false;
        } else if (subset.size() == best_len && from_top != best_from_top) {
          ambiguous = true;
        }
      }
    } while (std::next_permutation(subset.begin(), subset.end()));
  }
  if (best_len == 0) throw std::runtime_error("predicate not in any chain");
  if (ambiguous) throw std::runtime_error("two maximal chains place " + predicate + " differently");
  return static_cast<double>(best_from_top) / static_cast<double>(best_len);
}

double BruteForce::depth_ratio(const std::string& key, const std::string& predicate) const {
  if (predicate == kOwlThing) return 1.0;
  if (classes_.contains(predicate)) return chain_ratio(allowed_concepts(key), predicate, class_edges_);
  return chain_ratio(allowed_roles(key), predicate, role_edges_);
}

double BruteForce::specificity(const std::string& key, const std::vector<OracleCondition>& conditions) const {
  std::set<std::string> predicates;
  for (const OracleCondition& c : conditions) predicates.insert(c.kind == OracleCondition::kConcept ? c.filler : c.role);
  double sum = 0.0;
  double best = 0.0;
  for (const std::string& p : predicates) {
    double r = depth_ratio(key, p);
    sum += r;
    best = std::max(best, r);
  }
  return sum / static_cast<double>(predicates.size()) * best;
}

}  // namespace dlm::testing
