#pragma once

#include <string>
#include <vector>

#include "concomp/community.hpp"
#include "concomp/ontology.hpp"

namespace concomp {

// Bag of lowercase word tokens describing one community's vocabulary.
struct VirtualDocument {
  std::string community_id;
  std::string ontology_id;
  std::vector<std::string> terms;  // duplicate-free, first-occurrence order
};

// Splits the IRI fragment (or last path segment) on camelCase boundaries,
// digit runs and -_. delimiters; lowercased. Single-letter tokens survive
// here and are filtered at document level.
std::vector<std::string> local_id_tokens(const std::string& iri);

// Whitespace split plus the local-id rules, lowercased.
std::vector<std::string> tokenize_label(const std::string& text);

// Labels of all community entities (requested language or untagged), local
// ids where no label exists. Entities in the owl/rdf/rdfs/xsd namespaces are
// skipped; comments are never read; single-letter and all-digit tokens drop.
VirtualDocument build_virtual_document(const Community& community, const OntologyDoc& doc,
                                       const std::string& language = "en");

}  // namespace concomp
