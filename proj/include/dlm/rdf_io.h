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

#ifndef DLM_RDF_IO_H_
#define DLM_RDF_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlm/ontology.h"

namespace dlm {

enum class RdfFormat { kNTriples, kTurtle };

std::optional<RdfFormat> rdf_format_from_name(std::string_view name);

// Turtle subset: @prefix/PREFIX, @base/BASE, prefixed names, `a`, `;` and
// `,` lists, quoted and numeric/boolean literals, and anonymous `[ ... ]`
// nodes. Collections and other OWL syntax are rejected. Errors carry the
// line and column.
std::vector<Triple> parse_triples(std::string_view text, RdfFormat format);

Ontology parse_ontology(std::string_view text, RdfFormat format);

// Format chosen from the extension (.nt -> N-Triples, else Turtle) unless given.
Ontology load_ontology(const std::filesystem::path& path,
                       std::optional<RdfFormat> format = std::nullopt);

// Declarations, hierarchy, domains/ranges, labels and the ABox as triples.
std::vector<Triple> ontology_triples(const Ontology& ontology);

// Canonical N-Triples: one triple per line, sorted by subject, predicate, object.
std::string serialize_ntriples(const Ontology& ontology);

// N-Triples spelling of one term: <iri>, "lex", "lex"@lang or "lex"^^<dt>.
std::string format_term(const Term& term);

// Parses one N-Triples term starting at `pos`; advances `pos` past it.
Term parse_term(std::string_view text, std::size_t& pos);

}  // namespace dlm

#endif  // DLM_RDF_IO_H_
