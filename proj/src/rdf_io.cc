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

#include "dlm/rdf_io.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dlm {
namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_pn_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == '%' || static_cast<unsigned char>(c) >= 0x80;
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, RdfFormat format) : text_(text), format_(format) {}

  std::vector<Triple> parse() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(triples_);
  }

  // Single-term entry point used for the question export format.
  Term single_term(std::size_t& pos) {
    pos_ = pos;
    Term t = object_term();
    pos = pos_;
    return t;
  }

 private:
  bool turtle() const { return format_ == RdfFormat::kTurtle; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void advance(std::size_t n = 1) { pos_ = std::min(pos_ + n, text_.size()); }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool starts_with_keyword(std::string_view kw, bool case_insensitive) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos_ + i];
      char b = kw[i];
      if (case_insensitive ? std::toupper(static_cast<unsigned char>(a)) != b : a != b) {
        return false;
      }
    }
    char after = peek(kw.size());
    return after == '\0' || (!is_pn_char(after) && after != ':');
  }

  void statement() {
    if (peek() == '@') {
      if (!turtle()) fail("directives are not allowed in N-Triples");
      if (starts_with_keyword("@prefix", false)) {
        advance(7);
        prefix_declaration();
        expect('.');
        return;
      }
      if (starts_with_keyword("@base", false)) {
        advance(5);
        skip_ws();
        base_ = iri_ref();
        expect('.');
        return;
      }
      fail("unknown directive");
    }
    if (turtle() && starts_with_keyword("PREFIX", true)) {
      advance(6);
      prefix_declaration();
      return;
    }
    if (turtle() && starts_with_keyword("BASE", true)) {
      advance(4);
      skip_ws();
      base_ = iri_ref();
      return;
    }
    skip_ws();
    if (peek() == '[') {
      if (!turtle()) fail("anonymous nodes are not allowed in N-Triples");
      Iri subject = anonymous_node();
      skip_ws();
      if (peek() != '.') predicate_object_list(subject);
    } else {
      Iri subject = subject_term();
      predicate_object_list(subject);
    }
    expect('.');
  }

  void prefix_declaration() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && peek() != ':') {
      if (!is_pn_char(peek())) fail("invalid prefix name");
      advance();
    }
    if (peek() != ':') fail("expected ':' in prefix declaration");
    std::string name(text_.substr(start, pos_ - start));
    advance();
    skip_ws();
    prefixes_[name] = iri_ref();
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected IRI");
    advance();
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = peek();
      if (c == '>') break;
      if (c == '\n' || c == ' ' || c == '"') fail("invalid character in IRI");
      if (c == '\\') {
        value += unicode_escape();
        continue;
      }
      value += c;
      advance();
    }
    advance();
    if (turtle() && !base_.empty() && value.find(':') == std::string::npos) {
      value = base_ + value;
    }
    if (value.empty()) fail("empty IRI");
    return value;
  }

  std::string unicode_escape() {
    advance();  // backslash
    char kind = peek();
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("invalid escape in IRI");
    advance();
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char h = peek();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("invalid unicode escape");
      cp = cp * 16 + static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(h))
                                                    ? h - '0'
                                                    : std::tolower(h) - 'a' + 10);
      advance();
    }
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  std::string prefixed_name() {
    std::size_t start = pos_;
    while (!at_end() && peek() != ':' && is_pn_char(peek())) advance();
    if (peek() != ':') fail("expected prefixed name");
    std::string prefix(text_.substr(start, pos_ - start));
    advance();
    std::size_t local_start = pos_;
    while (!at_end() && is_pn_char(peek())) advance();
    // A trailing '.' terminates the statement rather than the name.
    while (pos_ > local_start && text_[pos_ - 1] == '.') --pos_;
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
    return it->second + std::string(text_.substr(local_start, pos_ - local_start));
  }

  std::string blank_node() {
    advance(2);  // "_:"
    std::size_t start = pos_;
    while (!at_end() && is_pn_char(peek())) advance();
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return "_:" + std::string(text_.substr(start, pos_ - start));
  }

  Iri subject_term() {
    skip_ws();
    char c = peek();
    if (c == '<') return Iri(iri_ref());
    if (c == '_' && peek(1) == ':') return Iri(blank_node());
    if (c == '(') fail("collections are not supported");
    if (turtle() && (is_pn_char(c) || c == ':')) return Iri(prefixed_name());
    fail("expected subject");
  }

  Iri verb() {
    skip_ws();
    if (turtle() && peek() == 'a') {
      char after = peek(1);
      if (after == '\0' || std::isspace(static_cast<unsigned char>(after)) || after == '<' ||
          after == '[' || after == '"') {
        advance();
        return Iri(std::string(vocab::kType));
      }
    }
    if (peek() == '<') return Iri(iri_ref());
    if (turtle() && (is_pn_char(peek()) || peek() == ':')) return Iri(prefixed_name());
    fail("expected predicate");
  }

  void predicate_object_list(const Iri& subject) {
    while (true) {
      Iri predicate = verb();
      while (true) {
        Term object = object_term();
        triples_.push_back(Triple{subject, predicate, std::move(object)});
        skip_ws();
        if (peek() != ',') break;
        if (!turtle()) fail("object lists are not allowed in N-Triples");
        advance();
      }
      skip_ws();
      if (peek() != ';') return;
      if (!turtle()) fail("predicate lists are not allowed in N-Triples");
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      if (peek() == '.' || peek() == ']') return;
    }
  }

  Iri anonymous_node() {
    advance();  // '['
    Iri node("_:anon" + std::to_string(++anon_counter_));
    skip_ws();
    if (peek() != ']') predicate_object_list(node);
    expect(']');
    return node;
  }

  Term object_term() {
    skip_ws();
    char c = peek();
    if (c == '<') return Iri(iri_ref());
    if (c == '_' && peek(1) == ':') return Iri(blank_node());
    if (c == '"' || (c == '\'' && turtle())) return string_literal();
    if (c == '(') fail("collections are not supported");
    if (turtle()) {
      if (c == '[') return anonymous_node();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        return numeric_literal();
      }
      if (starts_with_keyword("true", false) || starts_with_keyword("false", false)) {
        bool value = peek() == 't';
        advance(value ? 4 : 5);
        return Literal{value ? "true" : "false", std::string(vocab::kXsd) + "boolean", ""};
      }
      if (is_pn_char(c) || c == ':') return Iri(prefixed_name());
    }
    fail("expected object");
  }

  Literal numeric_literal() {
    std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') advance();
    bool dot = false, exponent = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '.' && !dot && !exponent &&
                 std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        advance();
      } else if ((c == 'e' || c == 'E') && !exponent) {
        exponent = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
      } else {
        break;
      }
    }
    std::string lexical(text_.substr(start, pos_ - start));
    if (lexical.empty() || lexical == "+" || lexical == "-") fail("invalid number");
    std::string type = exponent ? "double" : dot ? "decimal" : "integer";
    return Literal{lexical, std::string(vocab::kXsd) + type, ""};
  }

  Literal string_literal() {
    char quote = peek();
    bool long_form = peek(1) == quote && peek(2) == quote;
    advance(long_form ? 3 : 1);
    if (long_form && !turtle()) fail("long strings are not allowed in N-Triples");
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          advance(3);
          break;
        }
      } else if (c == quote) {
        advance();
        break;
      } else if (c == '\n') {
        fail("newline in string");
      }
      if (c == '\\') {
        char e = peek(1);
        switch (e) {
          case 't': value += '\t'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'b': value += '\b'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u':
          case 'U':
            value += unicode_escape();
            continue;
          default:
            fail("invalid string escape");
        }
        advance(2);
        continue;
      }
      value += c;
      advance();
    }
    Literal lit{std::move(value), std::string(vocab::kXsdString), ""};
    if (peek() == '@') {
      advance();
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        advance();
      }
      if (pos_ == start) fail("empty language tag");
      lit.language = std::string(text_.substr(start, pos_ - start));
      lit.datatype = std::string(vocab::kLangString);
    } else if (peek() == '^' && peek(1) == '^') {
      advance(2);
      if (peek() == '<') {
        lit.datatype = iri_ref();
      } else if (turtle()) {
        lit.datatype = prefixed_name();
      } else {
        fail("expected datatype IRI");
      }
    }
    return lit;
  }

  std::string_view text_;
  RdfFormat format_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
  std::string base_;
  std::size_t anon_counter_ = 0;
  std::vector<Triple> triples_;
};

void escape_literal(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::optional<RdfFormat> rdf_format_from_name(std::string_view name) {
  if (name == "n-triples" || name == "ntriples" || name == "nt") return RdfFormat::kNTriples;
  if (name == "turtle" || name == "ttl" || name == "turtle-subset") return RdfFormat::kTurtle;
  return std::nullopt;
}

std::vector<Triple> parse_triples(std::string_view text, RdfFormat format) {
  return TurtleParser(text, format).parse();
}

Ontology parse_ontology(std::string_view text, RdfFormat format) {
  return Ontology::build(parse_triples(text, format));
}

Ontology load_ontology(const std::filesystem::path& path, std::optional<RdfFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open ontology file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  RdfFormat f = format.value_or(path.extension() == ".nt" ? RdfFormat::kNTriples
                                                          : RdfFormat::kTurtle);
  try {
    return parse_ontology(buffer.str(), f);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

std::vector<Triple> ontology_triples(const Ontology& o) {
  std::set<Triple> out;
  auto iri = [](std::string_view s) { return Iri(std::string(s)); };
  const Iri type = iri(vocab::kType);
  for (const Iri& c : o.concepts()) out.insert({c, type, iri(vocab::kOwlClass)});
  for (const Iri& r : o.object_roles()) out.insert({r, type, iri(vocab::kObjectProperty)});
  for (const Iri& r : o.data_roles()) out.insert({r, type, iri(vocab::kDatatypeProperty)});
  for (const Iri& i : o.individuals()) out.insert({i, type, iri(vocab::kNamedIndividual)});
  for (const auto& [sub, super] : o.sub_concept_edges()) {
    out.insert({sub, iri(vocab::kSubClassOf), super});
  }
  for (const auto& [sub, super] : o.sub_role_edges()) {
    out.insert({sub, iri(vocab::kSubPropertyOf), super});
  }
  for (const auto& [role, c] : o.role_domains()) out.insert({role, iri(vocab::kDomain), c});
  for (const auto& [role, c] : o.role_ranges()) out.insert({role, iri(vocab::kRange), c});
  for (const auto& [entity, label] : o.labels()) {
    out.insert({entity, iri(vocab::kLabel), Literal{label, std::string(vocab::kXsdString), {}}});
  }
  out.insert(o.abox().begin(), o.abox().end());
  return {out.begin(), out.end()};
}

std::string format_term(const Term& term) {
  std::string out;
  if (const auto* i = std::get_if<Iri>(&term)) {
    if (i->str().starts_with("_:")) return i->str();
    out += '<';
    out += i->str();
    out += '>';
    return out;
  }
  const Literal& lit = std::get<Literal>(term);
  out += '"';
  escape_literal(out, lit.lexical);
  out += '"';
  if (!lit.language.empty()) {
    out += '@';
    out += lit.language;
  } else if (lit.datatype != vocab::kXsdString) {
    out += "^^<";
    out += lit.datatype;
    out += '>';
  }
  return out;
}

Term parse_term(std::string_view text, std::size_t& pos) {
  return TurtleParser(text, RdfFormat::kNTriples).single_term(pos);
}

std::string serialize_ntriples(const Ontology& ontology) {
  std::string out;
  for (const Triple& t : ontology_triples(ontology)) {
    out += format_term(t.subject);
    out += ' ';
    out += format_term(t.predicate);
    out += ' ';
    out += format_term(t.object);
    out += " .\n";
  }
  return out;
}

}  // namespace dlm
