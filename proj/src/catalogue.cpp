#include "concomp/catalogue.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

constexpr size_t kDescriptionTermCap = 200;

std::string lexical_name(const std::string& id) {
  auto hash = id.find_last_of('#');
  if (hash != std::string::npos && hash + 1 < id.size()) return id.substr(hash + 1);
  auto slash = id.find_last_of('/');
  if (slash != std::string::npos && slash + 1 < id.size()) return id.substr(slash + 1);
  return id;
}

// argmax by count, lexicographically smallest key on ties
const std::string* top_key(const std::map<std::string, int>& freq) {
  const std::string* best = nullptr;
  int best_count = 0;
  for (const auto& [key, count] : freq) {  // ascending key order keeps the tie rule
    if (!best || count > best_count) {
      best = &key;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

std::vector<ConceptualComponent> build_components(
    const ClusteringResult& result, const std::vector<GroundedDocument>& grounded,
    const std::vector<VirtualDocument>& vdocs, const std::vector<Fragment>& fragments,
    const Lexicon* lexicon, const std::map<int, std::string>& name_overrides) {
  std::map<std::string, const GroundedDocument*> grounded_by_key;
  for (const auto& g : grounded) grounded_by_key[g.ontology_id + "/" + g.community_id] = &g;
  std::map<std::string, const VirtualDocument*> vdoc_by_key;
  for (const auto& v : vdocs) vdoc_by_key[v.ontology_id + "/" + v.community_id] = &v;
  std::set<std::string> fragment_keys;
  for (const auto& f : fragments) fragment_keys.insert(f.ontology_id + "/" + f.community_id);

  std::map<int, std::vector<std::string>> members_by_cluster;
  for (const auto& [key, cluster] : result.assignment) {
    if (!grounded_by_key.count(key) || !vdoc_by_key.count(key) || !fragment_keys.count(key))
      throw MissingArtifactsError("no grounded document/virtual document/fragment for " + key);
    members_by_cluster[cluster].push_back(key);
  }

  std::vector<ConceptualComponent> out;
  for (auto& [cluster, keys] : members_by_cluster) {
    std::sort(keys.begin(), keys.end());

    ConceptualComponent comp;
    comp.cluster_id = cluster;

    std::vector<std::string> terms;
    std::set<std::string> seen_terms;
    for (const auto& key : keys) {
      const GroundedDocument* g = grounded_by_key[key];
      for (const auto& [f, c] : g->frames) comp.frame_frequencies[f] += c;
      for (const auto& [s, c] : g->synsets) comp.synset_frequencies[s] += c;

      auto slash = key.find('/');
      ComponentMember m;
      m.ontology_id = key.substr(0, slash);
      m.community_id = key.substr(slash + 1);
      m.fragment_path = "fragments/" + m.ontology_id + "/" + m.community_id + ".ttl";
      comp.members.push_back(std::move(m));

      for (const auto& t : vdoc_by_key[key]->terms) {
        if (terms.size() >= kDescriptionTermCap) break;
        if (seen_terms.insert(t).second) terms.push_back(t);
      }
    }

    if (auto it = name_overrides.find(cluster); it != name_overrides.end()) {
      comp.name = it->second;
    } else if (const std::string* frame = top_key(comp.frame_frequencies)) {
      comp.name = lexical_name(*frame);
    } else if (const std::string* synset = top_key(comp.synset_frequencies)) {
      std::string lemma = lexicon ? lexicon->first_lemma_of(*synset) : "";
      comp.name = lemma.empty() ? "component-" + std::to_string(cluster) : lemma;
    } else {
      comp.name = "component-" + std::to_string(cluster);
    }

    std::ostringstream desc;
    for (size_t i = 0; i < terms.size(); ++i) desc << (i ? " " : "") << terms[i];
    comp.description = desc.str();

    out.push_back(std::move(comp));
  }
  return out;
}

ClusterNetwork build_network(const std::vector<ConceptualComponent>& components,
                             const FrameMap& frames) {
  ClusterNetwork net;
  struct RawEdge {
    int from, to, count;
  };
  std::vector<RawEdge> raw;
  for (const auto& c1 : components) {
    for (const auto& c2 : components) {
      if (c1.cluster_id == c2.cluster_id) continue;
      int count = 0;
      for (const auto& [f, n] : c1.frame_frequencies) {
        auto anc = frames.ancestors(f);
        bool subsumed = std::any_of(anc.begin(), anc.end(), [&](const std::string& a) {
          return c2.frame_frequencies.count(a) > 0;
        });
        if (subsumed) ++count;
      }
      if (count >= 1) raw.push_back({c1.cluster_id, c2.cluster_id, count});
      net.max_count = std::max(net.max_count, count);
    }
  }
  for (const auto& e : raw) {
    net.edges.push_back(
        {e.from, e.to, e.count, static_cast<double>(e.count) / static_cast<double>(net.max_count)});
  }
  return net;
}

Catalogue generate_catalogue(std::vector<ConceptualComponent> components, ClusterNetwork network,
                             Provenance provenance) {
  Catalogue cat;
  cat.components = std::move(components);
  cat.network = std::move(network);
  cat.provenance = std::move(provenance);
  for (const auto& comp : cat.components) {
    for (const auto& m : comp.members) {
      auto& ids = cat.ontology_index[m.ontology_id];
      if (std::find(ids.begin(), ids.end(), comp.cluster_id) == ids.end())
        ids.push_back(comp.cluster_id);
    }
  }
  for (auto& [onto, ids] : cat.ontology_index) std::sort(ids.begin(), ids.end());
  for (const auto& e : cat.network.edges) {
    if (!(e.weight > 0.0 && e.weight <= 1.0))
      throw Error("network weight out of (0,1] on edge " + std::to_string(e.from) + "->" +
                  std::to_string(e.to));
  }
  return cat;
}

nlohmann::json catalogue_to_json(const Catalogue& c) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& comp : c.components) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : comp.members) {
      members.push_back({{"ontology", m.ontology_id},
                         {"community", m.community_id},
                         {"fragmentPath", m.fragment_path}});
    }
    comps.push_back({{"id", comp.cluster_id},
                     {"name", comp.name},
                     {"frames", comp.frame_frequencies},
                     {"synsets", comp.synset_frequencies},
                     {"description", comp.description},
                     {"members", members}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.network.edges) {
    edges.push_back(
        {{"from", e.from}, {"to", e.to}, {"rawCount", e.raw_count}, {"weight", e.weight}});
  }
  return {{"components", comps},
          {"network", {{"maxCount", c.network.max_count}, {"edges", edges}}},
          {"ontologyIndex", c.ontology_index},
          {"provenance",
           {{"schemaVersion", c.provenance.schema_version},
            {"seed", c.provenance.seed},
            {"kMax", c.provenance.k_max},
            {"k", c.provenance.chosen_k},
            {"wsd", c.provenance.strategy},
            {"language", c.provenance.language},
            {"resources", c.provenance.resource_digests}}}};
}

Catalogue catalogue_from_json(const nlohmann::json& j) {
  Catalogue c;
  for (const auto& cj : j.at("components")) {
    ConceptualComponent comp;
    comp.cluster_id = cj.at("id").get<int>();
    comp.name = cj.at("name").get<std::string>();
    comp.frame_frequencies = cj.at("frames").get<std::map<std::string, int>>();
    comp.synset_frequencies = cj.at("synsets").get<std::map<std::string, int>>();
    comp.description = cj.at("description").get<std::string>();
    for (const auto& mj : cj.at("members")) {
      comp.members.push_back({mj.at("ontology").get<std::string>(),
                              mj.at("community").get<std::string>(),
                              mj.at("fragmentPath").get<std::string>()});
    }
    c.components.push_back(std::move(comp));
  }
  c.network.max_count = j.at("network").at("maxCount").get<int>();
  for (const auto& ej : j.at("network").at("edges")) {
    c.network.edges.push_back({ej.at("from").get<int>(), ej.at("to").get<int>(),
                               ej.at("rawCount").get<int>(), ej.at("weight").get<double>()});
  }
  c.ontology_index = j.at("ontologyIndex").get<std::map<std::string, std::vector<int>>>();
  const auto& pj = j.at("provenance");
  c.provenance.schema_version = pj.at("schemaVersion").get<int>();
  c.provenance.seed = pj.at("seed").get<std::uint64_t>();
  c.provenance.k_max = pj.at("kMax").get<int>();
  c.provenance.chosen_k = pj.at("k").get<int>();
  c.provenance.strategy = pj.at("wsd").get<std::string>();
  c.provenance.language = pj.at("language").get<std::string>();
  c.provenance.resource_digests = pj.at("resources").get<std::map<std::string, std::string>>();
  return c;
}

std::string catalogue_to_markdown(const Catalogue& c) {
  std::ostringstream os;
  os << "# Conceptual component catalogue\n\n";
  os << c.components.size() << " components over " << c.ontology_index.size() << " ontologies.\n";
  for (const auto& comp : c.components) {
    os << "\n## " << comp.cluster_id << ": " << comp.name << "\n\n";
    os << "Members (" << comp.members.size() << "):\n";
    for (const auto& m : comp.members)
      os << "- " << m.ontology_id << "/" << m.community_id << " (`" << m.fragment_path << "`)\n";
    if (const auto* f = top_key(comp.frame_frequencies))
      os << "\nTop frame: " << *f << " (" << comp.frame_frequencies.at(*f) << ")\n";
    if (!comp.description.empty()) os << "\n> " << comp.description << "\n";
  }
  if (!c.network.edges.empty()) {
    os << "\n## Network\n\n";
    for (const auto& e : c.network.edges) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", e.weight);
      os << "- " << e.from << " -> " << e.to << " (w=" << buf << ")\n";
    }
  }
  return os.str();
}

std::string network_to_dot(const Catalogue& c) {
  std::ostringstream os;
  os << "digraph components {\n";
  for (const auto& comp : c.components)
    os << "  c" << comp.cluster_id << " [label=\"" << comp.name << "\"];\n";
  for (const auto& e : c.network.edges) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", e.weight);
    os << "  c" << e.from << " -> c" << e.to << " [label=\"w=" << buf << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  char hex[24];
  std::snprintf(hex, sizeof(hex), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace concomp
