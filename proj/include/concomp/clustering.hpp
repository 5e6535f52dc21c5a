#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "concomp/grounding.hpp"

namespace concomp {

// L2-normalized count vector over the corpus vocabulary; empty grounded
// documents become zero vectors and are excluded from clustering.
struct DocVector {
  std::string key;  // "<ontologyId>/<communityId>"
  std::vector<double> values;
  bool empty = false;
};

struct Vectorized {
  std::vector<std::string> vocabulary;  // sorted; synset ids tagged "s:", frames "f:"
  std::vector<DocVector> vectors;       // document order preserved
};

Vectorized vectorize(const std::vector<GroundedDocument>& docs);

struct KMeansRun {
  std::vector<int> assignment;
  std::vector<std::vector<double>> centroids;
  double wcss = 0.0;
  int iterations = 0;
  std::vector<double> wcss_trace;  // per Lloyd iteration, non-increasing
};

// Deterministic K-Means: farthest-point seeding from a seed-chosen first
// center, Lloyd iteration until stable (max 300), empty clusters repaired by
// stealing the point farthest from its centroid. Throws InvalidKError.
KMeansRun kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed);

// Elbow: argmax of the discrete second difference W(k-1) - 2W(k) + W(k+1)
// over interior points, smallest k on ties. Throws CurveTooShortError for
// curves with fewer than 3 points.
int elbow_select(const std::map<int, double>& wcss_curve);

struct ClusteringResult {
  int k = 0;
  std::map<std::string, int> assignment;  // document key -> cluster
  std::vector<std::vector<double>> centroids;
  std::map<int, double> wcss_curve;
};

// Runs kmeans for k' in [1, min(k_max, n-1)] with 5 restarts each (seeds
// seed..seed+4, best WCSS kept), picks k by the elbow rule. Requires at
// least 3 non-empty documents.
ClusteringResult cluster_corpus(const std::vector<GroundedDocument>& docs, int k_max,
                                std::uint64_t seed);

nlohmann::json clustering_to_json(const ClusteringResult& r);
ClusteringResult clustering_from_json(const nlohmann::json& j);

}  // namespace concomp
