#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "concomp/ontology.hpp"

namespace concomp {

// Parses Turtle (N-Triples is a syntactic subset and parses with the same
// grammar). Supports @prefix/@base and SPARQL-style PREFIX/BASE, 'a',
// predicate/object lists, anonymous blank nodes, collections, numeric and
// boolean shorthand, language tags, typed literals and long strings.
// Throws ParseError with a 1-based line number.
std::vector<Triple> parse_rdf(std::string_view text, const std::string& base_iri);

// Canonical N-Triples serialization of a sorted triple list.
std::string to_ntriples(const std::vector<Triple>& triples);

// Turtle serialization with the four well-known prefixes declared. Blank
// nodes keep their labels, so the output reparses to an equal triple set.
std::string to_turtle(const std::vector<Triple>& triples);

}  // namespace concomp
