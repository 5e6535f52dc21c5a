#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "concomp/intensional.hpp"

namespace concomp {

// A community partition of one intensional graph. assignment[node] is the
// community index; q is the modularity of that assignment.
struct Partition {
  std::string graph_id;
  std::vector<int> assignment;
  double q = 0.0;
};

struct Community {
  std::string id;  // assigned by the pipeline, e.g. "c000"
  std::string ontology_id;
  std::vector<IGNode> nodes;  // sorted
  int internal_edges = 0;
  double density = 0.0;
};

// 2*internal / (n*(n-1)); 0 for singletons.
double community_density(size_t node_count, size_t internal_edges);

// Newman modularity Q = sum_c (e_cc - a_c^2). Throws EmptyGraphError when the
// graph has no edges.
double modularity(const IntensionalGraph& g, const std::vector<int>& assignment);

// Greedy agglomeration: start from singletons, repeatedly merge the pair with
// the largest delta-Q, stop when every merge would decrease Q (zero-gain
// merges are accepted). Ties break on the smallest (min,max) community index
// pair; indices come from sorted node order, so the result is deterministic.
Partition cnm_partition(const IntensionalGraph& g);

// Recursively re-partitions communities whose density is strictly below the
// mean density of the current step (minimum splittable size 4) until no
// community splits further.
std::vector<Community> refine(const IntensionalGraph& g, const Partition& p);

// cnm_partition + refine; empty graph yields an empty set. Communities are
// sorted by node content and get ids c000, c001, ...
std::vector<Community> detect_communities(const IntensionalGraph& g);

nlohmann::json communities_to_json(const std::string& ontology_id,
                                   const std::vector<Community>& communities);
std::vector<Community> communities_from_json(const nlohmann::json& j);

}  // namespace concomp
