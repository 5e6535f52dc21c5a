#include "concomp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "concomp/catalogue.hpp"
#include "concomp/clustering.hpp"
#include "concomp/community.hpp"
#include "concomp/errors.hpp"
#include "concomp/fragments.hpp"
#include "concomp/intensional.hpp"
#include "concomp/turtle.hpp"

namespace concomp {

namespace {

using nlohmann::json;

struct OntologyResult {
  std::string id;
  std::string file;
  bool ok = false;
  std::string error;
  size_t triples = 0, nodes = 0, edges = 0;
  std::vector<Community> communities;
  std::vector<Fragment> fragments;
  std::vector<VirtualDocument> vdocs;
  std::vector<GroundedDocument> grounded;
};

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) return files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto ext = e.path().extension();
    if (ext == ".ttl" || ext == ".nt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void process_ontology(const std::filesystem::path& file, const Lexicon& lexicon,
                      const FrameMap& frames, const PipelineConfig& config, OntologyResult& r) {
  r.file = file.filename().generic_string();
  r.id = file.stem().generic_string();
  try {
    OntologyDoc doc = load_ontology(file, r.id);
    r.triples = doc.triples.size();
    IntensionalGraph graph = build_intensional_graph(doc);
    r.nodes = graph.nodes.size();
    r.edges = graph.edges.size();
    r.communities = detect_communities(graph);
    for (const auto& c : r.communities) {
      r.fragments.push_back(extract_fragment(c, doc));
      r.vdocs.push_back(build_virtual_document(c, doc, config.language));
      r.grounded.push_back(ground(r.vdocs.back(), lexicon, frames, config.strategy));
    }
    r.ok = true;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
}

std::map<int, std::string> load_name_overrides(const std::filesystem::path& path) {
  std::map<int, std::string> out;
  if (path.empty()) return out;
  json j = json::parse(read_file(path));
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = value.get<std::string>();
  return out;
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

json manifest_json(const std::vector<OntologyResult>& results, size_t clustered, int k) {
  json ontologies = json::array();
  size_t skipped = 0;
  for (const auto& r : results) {
    json o = {{"id", r.id}, {"file", r.file}, {"status", r.ok ? "ok" : "skipped"}};
    if (r.ok) {
      o["triples"] = r.triples;
      o["nodes"] = r.nodes;
      o["edges"] = r.edges;
      o["communities"] = r.communities.size();
    } else {
      o["error"] = r.error;
      ++skipped;
    }
    ontologies.push_back(std::move(o));
  }
  return {{"ontologies", ontologies},
          {"skipped", skipped},
          {"clusteredDocuments", clustered},
          {"k", k}};
}

Lexicon load_lexicon(const PipelineConfig& config) {
  return Lexicon::load(config.lemmas_path, config.relations_path);
}

FrameMap load_frames(const PipelineConfig& config) {
  return FrameMap::load(config.close_match_path, config.hierarchy_path);
}

void dump_per_ontology_stages(const PipelineConfig& config, const OntologyResult& r,
                              const IntensionalGraph* graph) {
  const auto& out = config.out_dir;
  if (config.dumps.count("graph") && graph) {
    write_file(out / "graphs" / (r.id + ".json"), graph_to_json(*graph).dump(2) + "\n");
    write_file(out / "graphs" / (r.id + ".dot"), to_dot(*graph));
  }
  if (config.dumps.count("communities")) {
    write_file(out / "communities" / (r.id + ".json"),
               communities_to_json(r.id, r.communities).dump(2) + "\n");
  }
  if (config.dumps.count("vdocs")) {
    std::ostringstream os;
    for (const auto& v : r.vdocs) {
      os << v.community_id << '\t';
      for (size_t i = 0; i < v.terms.size(); ++i) os << (i ? " " : "") << v.terms[i];
      os << '\n';
    }
    write_file(out / "vdocs" / (r.id + ".tsv"), os.str());
  }
  if (config.dumps.count("ground")) {
    json docs = json::array();
    for (const auto& g : r.grounded)
      docs.push_back({{"communityId", g.community_id}, {"synsets", g.synsets}, {"frames", g.frames}});
    write_file(out / "grounded" / (r.id + ".json"),
               json{{"ontologyId", r.id}, {"documents", docs}}.dump(2) + "\n");
  }
}

}  // namespace

int run_extract(const PipelineConfig& config) {
  try {
    auto files = corpus_files(config.corpus_dir);
    if (files.empty()) {
      std::cerr << "error: no ontologies found in " << config.corpus_dir.generic_string() << "\n";
      return 1;
    }
    Lexicon lexicon = load_lexicon(config);
    FrameMap frames = load_frames(config);

    std::vector<OntologyResult> results(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= files.size()) break;
        process_ontology(files[i], lexicon, frames, config, results[i]);
      }
    };
    int jobs = std::min<int>(effective_jobs(config.jobs), static_cast<int>(files.size()));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<const OntologyResult*> ordered;
    for (const auto& r : results) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const OntologyResult* a, const OntologyResult* b) { return a->id < b->id; });

    std::vector<GroundedDocument> grounded;
    std::vector<VirtualDocument> vdocs;
    std::vector<Fragment> fragments;
    for (const OntologyResult* r : ordered) {
      if (!r->ok) {
        std::cerr << "warning: skipping " << r->file << ": " << r->error << "\n";
        if (config.strict) {
          std::cerr << "error: --strict is set, aborting\n";
          return 1;
        }
        continue;
      }
      for (const auto& f : r->fragments) {
        write_file(config.out_dir / "fragments" / f.ontology_id / (f.community_id + ".ttl"),
                   fragment_to_turtle(f));
      }
      grounded.insert(grounded.end(), r->grounded.begin(), r->grounded.end());
      vdocs.insert(vdocs.end(), r->vdocs.begin(), r->vdocs.end());
      fragments.insert(fragments.end(), r->fragments.begin(), r->fragments.end());

      if (!config.dumps.empty()) {
        // rebuild the graph for the dump; per-file work is cheap at this scale
        IntensionalGraph graph;
        try {
          graph = build_intensional_graph(load_ontology(config.corpus_dir / r->file, r->id));
        } catch (const std::exception&) {
        }
        dump_per_ontology_stages(config, *r, &graph);
      }
    }

    ClusteringResult clustering = cluster_corpus(grounded, config.k_max, config.seed);
    if (config.dumps.count("cluster")) {
      write_file(config.out_dir / "cluster" / "clustering.json",
                 clustering_to_json(clustering).dump(2) + "\n");
      std::ostringstream csv;
      csv << "k,wcss\n";
      for (const auto& [k, w] : clustering.wcss_curve) csv << k << ',' << w << '\n';
      write_file(config.out_dir / "cluster" / "wcss.csv", csv.str());
    }

    auto components = build_components(clustering, grounded, vdocs, fragments, &lexicon,
                                       load_name_overrides(config.names_path));
    ClusterNetwork network = build_network(components, frames);

    Provenance prov;
    prov.seed = config.seed;
    prov.k_max = config.k_max;
    prov.chosen_k = clustering.k;
    prov.strategy = to_string(config.strategy);
    prov.language = config.language;
    prov.resource_digests["lemmas"] = file_digest(config.lemmas_path);
    if (!config.relations_path.empty())
      prov.resource_digests["relations"] = file_digest(config.relations_path);
    prov.resource_digests["closeMatch"] = file_digest(config.close_match_path);
    prov.resource_digests["frameHierarchy"] = file_digest(config.hierarchy_path);

    Catalogue catalogue = generate_catalogue(std::move(components), std::move(network), prov);
    write_file(config.out_dir / "catalogue.json", catalogue_to_json(catalogue).dump(2) + "\n");
    write_file(config.out_dir / "catalogue.md", catalogue_to_markdown(catalogue));
    write_file(config.out_dir / "network.dot", network_to_dot(catalogue));
    write_file(config.out_dir / "manifest.json",
               manifest_json(results, grounded.size(), clustering.k).dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

void require_dir(const std::filesystem::path& dir, const std::string& stage) {
  if (!std::filesystem::is_directory(dir))
    throw MissingPriorStageError("stage '" + stage + "' needs " + dir.generic_string() +
                                 " from a previous stage");
}

int stage_graph(const PipelineConfig& config) {
  auto files = corpus_files(config.corpus_dir);
  if (files.empty()) {
    std::cerr << "error: no ontologies found in " << config.corpus_dir.generic_string() << "\n";
    return 1;
  }
  for (const auto& f : files) {
    std::string id = f.stem().generic_string();
    IntensionalGraph g = build_intensional_graph(load_ontology(f, id));
    write_file(config.out_dir / "graphs" / (id + ".json"), graph_to_json(g).dump(2) + "\n");
    write_file(config.out_dir / "graphs" / (id + ".dot"), to_dot(g));
  }
  return 0;
}

int stage_communities(const PipelineConfig& config) {
  auto dir = config.out_dir / "graphs";
  require_dir(dir, "communities");
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    IntensionalGraph g = graph_from_json(json::parse(read_file(e.path())));
    auto communities = detect_communities(g);
    write_file(config.out_dir / "communities" / (g.ontology_id + ".json"),
               communities_to_json(g.ontology_id, communities).dump(2) + "\n");
  }
  return 0;
}

int stage_vdocs(const PipelineConfig& config) {
  auto dir = config.out_dir / "communities";
  require_dir(dir, "vdocs");
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    auto communities = communities_from_json(json::parse(read_file(e.path())));
    if (communities.empty()) continue;
    std::string id = communities.front().ontology_id;
    OntologyDoc doc;
    for (const char* ext : {".ttl", ".nt"}) {
      auto p = config.corpus_dir / (id + ext);
      if (std::filesystem::exists(p)) doc = load_ontology(p, id);
    }
    if (doc.id.empty())
      throw MissingPriorStageError("ontology file for '" + id + "' not found in corpus");
    std::ostringstream os;
    for (const auto& c : communities) {
      auto v = build_virtual_document(c, doc, config.language);
      os << v.community_id << '\t';
      for (size_t i = 0; i < v.terms.size(); ++i) os << (i ? " " : "") << v.terms[i];
      os << '\n';
    }
    write_file(config.out_dir / "vdocs" / (id + ".tsv"), os.str());
  }
  return 0;
}

int stage_ground(const PipelineConfig& config) {
  auto dir = config.out_dir / "vdocs";
  require_dir(dir, "ground");
  Lexicon lexicon = load_lexicon(config);
  FrameMap frames = load_frames(config);
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".tsv") continue;
    std::string id = e.path().stem().generic_string();
    std::istringstream in(read_file(e.path()));
    std::string line;
    json docs = json::array();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tab = line.find('\t');
      VirtualDocument v;
      v.ontology_id = id;
      v.community_id = line.substr(0, tab);
      if (tab != std::string::npos) {
        std::istringstream terms(line.substr(tab + 1));
        std::string t;
        while (terms >> t) v.terms.push_back(t);
      }
      auto g = ground(v, lexicon, frames, config.strategy);
      docs.push_back({{"communityId", g.community_id}, {"synsets", g.synsets}, {"frames", g.frames}});
    }
    write_file(config.out_dir / "grounded" / (id + ".json"),
               json{{"ontologyId", id}, {"documents", docs}}.dump(2) + "\n");
  }
  return 0;
}

int stage_cluster(const PipelineConfig& config) {
  auto dir = config.out_dir / "grounded";
  require_dir(dir, "cluster");
  std::vector<GroundedDocument> grounded;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    json j = json::parse(read_file(f));
    for (const auto& dj : j.at("documents")) {
      GroundedDocument g;
      g.ontology_id = j.at("ontologyId").get<std::string>();
      g.community_id = dj.at("communityId").get<std::string>();
      g.synsets = dj.at("synsets").get<Bag>();
      g.frames = dj.at("frames").get<Bag>();
      grounded.push_back(std::move(g));
    }
  }
  ClusteringResult clustering = cluster_corpus(grounded, config.k_max, config.seed);
  write_file(config.out_dir / "cluster" / "clustering.json",
             clustering_to_json(clustering).dump(2) + "\n");
  std::ostringstream csv;
  csv << "k,wcss\n";
  for (const auto& [k, w] : clustering.wcss_curve) csv << k << ',' << w << '\n';
  write_file(config.out_dir / "cluster" / "wcss.csv", csv.str());
  return 0;
}

}  // namespace

int run_stage(const std::string& stage, const PipelineConfig& config) {
  try {
    if (stage == "graph") return stage_graph(config);
    if (stage == "communities") return stage_communities(config);
    if (stage == "vdocs") return stage_vdocs(config);
    if (stage == "ground") return stage_ground(config);
    if (stage == "cluster") return stage_cluster(config);
    std::cerr << "error: unknown stage '" << stage
              << "' (expected graph|communities|vdocs|ground|cluster)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: stage " << stage << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace concomp
