#pragma once

#include <compare>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "concomp/ontology.hpp"

namespace concomp {

struct EntityNode {
  std::string iri;
  auto operator<=>(const EntityNode&) const = default;
};

// Property use contextualised by what it connects; the node that lets one
// property participate in several communities.
struct ContextNode {
  std::string source;
  std::string property;
  std::string target;
  auto operator<=>(const ContextNode&) const = default;
};

using IGNode = std::variant<EntityNode, ContextNode>;

inline bool is_entity(const IGNode& n) { return std::holds_alternative<EntityNode>(n); }
inline bool is_context(const IGNode& n) { return std::holds_alternative<ContextNode>(n); }
std::string node_label(const IGNode& n);

// A directed labelled arc property(source, target) produced by rules r1/r2.
struct LabelledArc {
  std::string property;
  std::string source;
  std::string target;
  auto operator<=>(const LabelledArc&) const = default;
};

// Undirected, unlabeled, simple graph. Nodes are sorted ascending (entities
// before contexts); edges are index pairs with first < second, sorted.
struct IntensionalGraph {
  std::string ontology_id;
  std::vector<IGNode> nodes;
  std::vector<std::pair<int, int>> edges;

  size_t context_count() const;
  std::vector<std::vector<int>> adjacency() const;
  int index_of(const IGNode& n) const;  // -1 when absent

  bool operator==(const IntensionalGraph&) const = default;
};

// r1: domain/range declarations; named pairs only, owl:Thing substituted for
// missing sides of declared object/data properties.
std::set<LabelledArc> derive_arcs_r1(const OntologyDoc& doc);

// r2: property restrictions attached to named classes, with filler
// resolution for hasValue and cardinality facets.
std::set<LabelledArc> derive_arcs_r2(const OntologyDoc& doc);

// r3: arc p(n1, n2) becomes n1 -- (n1-p-n2) -- n2.
IntensionalGraph expand_r3(const std::set<LabelledArc>& arcs, std::string ontology_id);

IntensionalGraph build_intensional_graph(const OntologyDoc& doc);

std::string to_dot(const IntensionalGraph& g);

nlohmann::json graph_to_json(const IntensionalGraph& g);
IntensionalGraph graph_from_json(const nlohmann::json& j);

}  // namespace concomp
