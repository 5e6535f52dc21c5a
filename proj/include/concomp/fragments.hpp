#pragma once

#include <string>
#include <vector>

#include "concomp/community.hpp"
#include "concomp/ontology.hpp"

namespace concomp {

// The OWL/RDF fragment a community maps back to: the observed ODP.
struct Fragment {
  std::string community_id;
  std::string ontology_id;
  std::vector<Triple> triples;        // sorted, duplicate-free
  std::vector<std::string> entities;  // every IRI mentioned in a community node
};

struct CommunityEntities {
  std::vector<std::string> classes;     // sorted; includes datatype IRIs, never owl:Thing
  std::vector<std::string> properties;  // sorted
};

CommunityEntities community_entities(const Community& community);

// Boundary heuristics: type triples for every entity; domain/range/inverse/
// super/equivalent axioms for properties; named super/equivalent classes;
// restriction blank-node closures for restrictions anchored in the community.
// Throws OntologyMismatchError when community and doc ids differ.
Fragment extract_fragment(const Community& community, const OntologyDoc& doc);

std::string fragment_to_turtle(const Fragment& f);

}  // namespace concomp
