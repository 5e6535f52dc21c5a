#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "concomp/clustering.hpp"
#include "concomp/fragments.hpp"
#include "concomp/grounding.hpp"
#include "concomp/vdoc.hpp"

namespace concomp {

struct ComponentMember {
  std::string ontology_id;
  std::string community_id;
  std::string fragment_path;

  bool operator==(const ComponentMember&) const = default;
};

// A cluster of OODPs presented as one conceptual component.
struct ConceptualComponent {
  int cluster_id = 0;
  std::string name;
  std::map<std::string, int> frame_frequencies;
  std::map<std::string, int> synset_frequencies;
  std::string description;
  std::vector<ComponentMember> members;

  bool operator==(const ConceptualComponent&) const = default;
};

struct NetworkEdge {
  int from = 0;
  int to = 0;
  int raw_count = 0;
  double weight = 0.0;

  bool operator==(const NetworkEdge&) const = default;
};

struct ClusterNetwork {
  std::vector<NetworkEdge> edges;
  int max_count = 0;

  bool operator==(const ClusterNetwork&) const = default;
};

struct Provenance {
  int schema_version = 1;
  std::uint64_t seed = 0;
  int k_max = 0;
  int chosen_k = 0;
  std::string strategy;
  std::string language;
  std::map<std::string, std::string> resource_digests;

  bool operator==(const Provenance&) const = default;
};

struct Catalogue {
  std::vector<ConceptualComponent> components;
  ClusterNetwork network;
  std::map<std::string, std::vector<int>> ontology_index;
  Provenance provenance;

  bool operator==(const Catalogue&) const = default;
};

// Aggregates per-cluster frame/synset frequencies, names each component from
// its most frequent frame (lexicographic tiebreak; synset-lemma then
// "component-<id>" fallbacks; overrides win), and builds the description from
// the members' deduplicated terms (capped at 200). The lexicon is only used
// for the synset naming fallback and may be null.
std::vector<ConceptualComponent> build_components(
    const ClusteringResult& result, const std::vector<GroundedDocument>& grounded,
    const std::vector<VirtualDocument>& vdocs, const std::vector<Fragment>& fragments,
    const Lexicon* lexicon, const std::map<int, std::string>& name_overrides);

// Directed inheritance network: rawCount(c1,c2) = number of distinct frames
// of c1 with a transitive ancestor in c2's frames; weight = rawCount / max
// rawCount over all ordered pairs. Edges exist only for rawCount >= 1.
ClusterNetwork build_network(const std::vector<ConceptualComponent>& components,
                             const FrameMap& frames);

Catalogue generate_catalogue(std::vector<ConceptualComponent> components, ClusterNetwork network,
                             Provenance provenance);

nlohmann::json catalogue_to_json(const Catalogue& c);
Catalogue catalogue_from_json(const nlohmann::json& j);

std::string catalogue_to_markdown(const Catalogue& c);
std::string network_to_dot(const Catalogue& c);

// FNV-1a digest of a file, for provenance records.
std::string file_digest(const std::filesystem::path& path);

}  // namespace concomp
