// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "concomp/catalogue.hpp"
#include "concomp/clustering.hpp"
#include "concomp/community.hpp"
#include "concomp/fragments.hpp"
#include "concomp/grounding.hpp"
#include "concomp/intensional.hpp"
#include "concomp/pipeline.hpp"
#include "concomp/vdoc.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace concomp;
using nlohmann::json;

namespace {

int failures = 0;

struct Check {
  std::ostringstream log;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what;
    }
  }
};

template <typename Fn>
void criterion(int number, const std::string& name, double budget_seconds, Fn fn) {
  Check c;
  auto start = std::chrono::steady_clock::now();
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.log << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && secs > budget_seconds) {
    c.ok = false;
    c.log << (c.log.str().empty() ? "" : "; ") << "runtime " << secs << "s exceeds "
          << budget_seconds << "s";
  }
  std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name << " ("
            << secs << "s)";
  if (!c.ok) {
    std::cout << " -- " << c.log.str();
    ++failures;
  }
  std::cout << "\n";
}

std::vector<std::pair<int, int>> clique_edges(int from, int to) {
  std::vector<std::pair<int, int>> e;
  for (int i = from; i < to; ++i)
    for (int j = i + 1; j < to; ++j) e.push_back({i, j});
  return e;
}

PipelineConfig base_config(const std::filesystem::path& out) {
  PipelineConfig c;
  c.out_dir = out;
  c.lemmas_path = testutil::testdata() / "resources" / "lemmas.tsv";
  c.relations_path = testutil::testdata() / "resources" / "relations.tsv";
  c.close_match_path = testutil::testdata() / "resources" / "closematch.tsv";
  c.hierarchy_path = testutil::testdata() / "resources" / "hierarchy.tsv";
  return c;
}

Community full_community(const IntensionalGraph& g) {
  Community c;
  c.id = "c000";
  c.ontology_id = g.ontology_id;
  c.nodes = g.nodes;
  c.internal_edges = static_cast<int>(g.edges.size());
  c.density = community_density(g.nodes.size(), g.edges.size());
  return c;
}

// 1. intensional-graph rule fidelity on toy1 plus the documented edge cases
void criterion1(Check& c) {
  const std::string ns = "http://example.org/toy1#";
  auto g = build_intensional_graph(testutil::load_toy1());
  c.expect(g.nodes.size() == 5, "toy1 graph must have 5 nodes");
  c.expect(g.edges.size() == 4, "toy1 graph must have 4 edges");
  for (const IGNode& n :
       {IGNode{EntityNode{ns + "Event"}}, IGNode{EntityNode{ns + "Agent"}},
        IGNode{EntityNode{ns + "TimeSpan"}},
        IGNode{ContextNode{ns + "Event", ns + "hasParticipant", ns + "Agent"}},
        IGNode{ContextNode{ns + "Event", ns + "atTime", ns + "TimeSpan"}}}) {
    c.expect(g.index_of(n) >= 0, "missing node " + node_label(n));
  }

  auto blank_domain = testutil::parse_doc(
      "bd", "@prefix : <http://example.org/bd#> .\n"
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            ":p rdfs:domain [ owl:unionOf :X ] ; rdfs:range :R .\n");
  c.expect(derive_arcs_r1(blank_domain).empty(), "blank domain must not produce an arc");

  auto missing_range = testutil::parse_doc(
      "mr", "@prefix : <http://example.org/mr#> .\n"
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            ":q a owl:ObjectProperty .\n");
  auto arcs = derive_arcs_r1(missing_range);
  c.expect(arcs.size() == 1 && arcs.begin()->source == vocab::owl_thing &&
               arcs.begin()->target == vocab::owl_thing,
           "undeclared domain/range must substitute owl:Thing");

  auto class_expr = testutil::parse_doc(
      "ce", "@prefix : <http://example.org/ce#> .\n"
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            ":C rdfs:subClassOf [ owl:onProperty :p ; owl:someValuesFrom [ owl:unionOf :U ] ] .\n");
  c.expect(derive_arcs_r2(class_expr).empty(), "class-expression filler must be dropped");
}

// 2. greedy modularity against the brute-force oracle
void criterion2(Check& c) {
  {
    auto edges = clique_edges(0, 4);
    auto b = clique_edges(4, 8);
    edges.insert(edges.end(), b.begin(), b.end());
    edges.push_back({3, 4});
    auto g = testutil::index_graph(8, edges);
    auto p = cnm_partition(g);
    auto brute = oracles::brute_force_best_partition(8, edges);
    c.expect(std::abs(p.q - brute.q) < 1e-12, "two-clique bridge must be exact");
    c.expect(std::abs(p.q - 11.0 / 26.0) < 1e-12, "two-clique bridge Q must be 11/26");
  }
  {
    auto edges = clique_edges(0, 4);
    auto b = clique_edges(4, 8);
    edges.insert(edges.end(), b.begin(), b.end());
    auto g = testutil::index_graph(8, edges);
    auto p = cnm_partition(g);
    auto brute = oracles::brute_force_best_partition(8, edges);
    c.expect(std::abs(p.q - brute.q) < 1e-12, "disconnected cliques must be exact");
  }
  for (unsigned seed = 115; seed <= 124; ++seed) {
    std::mt19937 rng(seed);
    int n = 5 + static_cast<int>(rng() % 5);
    std::vector<std::pair<int, int>> edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    do {
      edges.clear();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (coin(rng) < 0.45) edges.push_back({i, j});
    } while (edges.empty());
    auto p = cnm_partition(testutil::index_graph(n, edges));
    auto brute = oracles::brute_force_best_partition(n, edges);
    bool within = brute.q > 0.0 ? p.q >= 0.9 * brute.q : p.q >= brute.q - 1e-12;
    c.expect(within, "seed " + std::to_string(seed) + " greedy " + std::to_string(p.q) +
                         " vs optimal " + std::to_string(brute.q));
  }
}

// 3. density refinement on the barbell-of-barbells
void criterion3(Check& c) {
  auto edges = clique_edges(0, 14);
  auto a = clique_edges(14, 18);
  auto b = clique_edges(18, 22);
  edges.insert(edges.end(), a.begin(), a.end());
  edges.insert(edges.end(), b.begin(), b.end());
  edges.push_back({17, 18});
  auto g = testutil::index_graph(22, edges);

  auto before = cnm_partition(g);
  int top = *std::max_element(before.assignment.begin(), before.assignment.end()) + 1;
  c.expect(top == 2, "pre-refinement must find 2 communities, found " + std::to_string(top));

  auto refined = refine(g, before);
  c.expect(refined.size() == 3, "refinement must yield 3 communities, got " +
                                    std::to_string(refined.size()));

  std::multiset<IGNode> covered;
  for (const auto& comm : refined) covered.insert(comm.nodes.begin(), comm.nodes.end());
  c.expect(covered == std::multiset<IGNode>(g.nodes.begin(), g.nodes.end()),
           "refine output must cover the node set exactly once");
}

// 4. fragment retrieval covers the whole single-pattern fixture
void criterion4(Check& c) {
  auto doc = testutil::load_toy1();
  auto g = build_intensional_graph(doc);
  auto f = extract_fragment(full_community(g), doc);
  c.expect(f.triples.size() == 10,
           "fragment must hold all 10 triples, got " + std::to_string(f.triples.size()));
  c.expect(f.triples == doc.triples, "fragment must equal the fixture triple set");
}

// 5. disambiguation strategies and frame closure on the shipped resources
void criterion5(Check& c) {
  auto lex = Lexicon::load(testutil::testdata() / "resources" / "lemmas.tsv",
                           testutil::testdata() / "resources" / "relations.tsv");
  auto fm = FrameMap::load(testutil::testdata() / "resources" / "closematch.tsv",
                           testutil::testdata() / "resources" / "hierarchy.tsv");

  std::vector<std::string> ambiguous{"bank", "river", "water"};
  auto first = disambiguate(ambiguous, lex, WsdStrategy::FirstSense);
  c.expect(first.count("s-bank-fin") == 1, "first-sense must pick the rank-1 sense");
  auto ppr = disambiguate(ambiguous, lex, WsdStrategy::GraphPpr);
  c.expect(ppr.count("s-bank-river") == 1 && ppr.count("s-bank-fin") == 0,
           "graph-ppr must pick the relation-supported sense");

  // ancestor closure over every fixture document
  std::vector<VirtualDocument> fixtures;
  {
    VirtualDocument toy;
    toy.terms = {"agent", "event", "time", "span", "at", "has", "participant"};
    fixtures.push_back(toy);
    VirtualDocument amb;
    amb.terms = ambiguous;
    fixtures.push_back(amb);
    for (const char* file : {"eventsA.ttl", "eventsB.ttl"}) {
      auto doc = load_ontology(testutil::testdata() / "minicorpus" / file,
                               std::filesystem::path(file).stem().string());
      for (const auto& comm : detect_communities(build_intensional_graph(doc)))
        fixtures.push_back(build_virtual_document(comm, doc));
    }
  }
  for (const auto& vd : fixtures) {
    for (auto strategy : {WsdStrategy::FirstSense, WsdStrategy::GraphPpr}) {
      auto gd = ground(vd, lex, fm, strategy);
      for (const auto& [frame, count] : gd.frames) {
        for (const auto& anc : fm.ancestors(frame)) {
          c.expect(gd.frames.count(anc) == 1, "frame bag not ancestor-closed at " + frame);
        }
      }
    }
  }
}

// 6. clustering on the 3-blob fixture
void criterion6(Check& c) {
  std::vector<GroundedDocument> docs;
  const char* groups[3] = {"a", "b", "c"};
  for (int g = 0; g < 3; ++g) {
    for (int i = 0; i < 5; ++i) {
      GroundedDocument d;
      d.ontology_id = std::string("o") + groups[g];
      d.community_id = "c00" + std::to_string(i);
      std::string gs = groups[g];
      d.synsets = {{gs + "-core1", 3}, {gs + "-core2", 3}, {gs + "-extra" + std::to_string(i), 1}};
      docs.push_back(std::move(d));
    }
  }
  auto result = cluster_corpus(docs, 30, 0);
  c.expect(result.k == 3, "elbow must select k=3, got " + std::to_string(result.k));
  for (int g = 0; g < 3; ++g) {
    std::string onto = std::string("o") + groups[g];
    int cluster = result.assignment.at(onto + "/c000");
    for (int i = 1; i < 5; ++i)
      c.expect(result.assignment.at(onto + "/c00" + std::to_string(i)) == cluster,
               "blob " + onto + " must stay in one cluster");
  }
  c.expect(result.assignment.at("oa/c000") != result.assignment.at("ob/c000") &&
               result.assignment.at("ob/c000") != result.assignment.at("oc/c000") &&
               result.assignment.at("oa/c000") != result.assignment.at("oc/c000"),
           "blobs must land in distinct clusters");

  double prev = -1.0;
  for (const auto& [k, w] : result.wcss_curve) {
    c.expect(prev < 0.0 || w <= prev + 1e-9, "wcss must be non-increasing in k");
    prev = w;
  }

  auto again = cluster_corpus(docs, 30, 0);
  c.expect(clustering_to_json(result).dump() == clustering_to_json(again).dump(),
           "same-seed runs must serialize identically");
}

// 7. network weight formula
void criterion7(Check& c) {
  FrameMap fm;
  fm.inherits["f1"] = {"g", "h"};
  fm.inherits["f2"] = {"g"};
  std::vector<ConceptualComponent> comps(3);
  comps[0].cluster_id = 0;
  comps[0].frame_frequencies = {{"f1", 1}, {"f2", 1}};
  comps[1].cluster_id = 1;
  comps[1].frame_frequencies = {{"g", 1}};
  comps[2].cluster_id = 2;
  comps[2].frame_frequencies = {{"h", 1}};
  auto net = build_network(comps, fm);
  c.expect(net.edges.size() == 2, "expected exactly 2 edges");
  std::set<double> weights;
  for (const auto& e : net.edges) weights.insert(e.weight);
  c.expect(weights == std::set<double>{0.5, 1.0}, "weights must be exactly {1.0, 0.5}");
  for (const auto& e : net.edges)
    c.expect(e.weight > 0.0 && e.weight <= 1.0, "weight out of (0,1]");

  // w in (0,1] on the mini-corpus catalogue as well
  testutil::TempDir tmp("acceptance-net");
  auto config = base_config(tmp.path / "out");
  config.corpus_dir = testutil::testdata() / "minicorpus";
  c.expect(run_extract(config) == 0, "mini-corpus run must succeed");
  auto cat = catalogue_from_json(json::parse(testutil::read_file(tmp.path / "out/catalogue.json")));
  for (const auto& e : cat.network.edges)
    c.expect(e.weight > 0.0 && e.weight <= 1.0, "catalogue weight out of (0,1]");
}

// 8. end-to-end mini-corpus
void criterion8(Check& c) {
  testutil::TempDir tmp("acceptance-e2e");
  auto config = base_config(tmp.path / "out");
  config.corpus_dir = testutil::testdata() / "minicorpus";
  c.expect(run_extract(config) == 0, "pipeline must exit 0");

  auto bytes = testutil::read_file(tmp.path / "out/catalogue.json");
  auto cat = catalogue_from_json(json::parse(bytes));
  const ConceptualComponent* event = nullptr;
  for (const auto& comp : cat.components)
    if (comp.name == "Event") event = &comp;
  c.expect(event != nullptr, "catalogue must contain an Event component");
  if (event) {
    std::set<std::string> ontologies;
    for (const auto& m : event->members) ontologies.insert(m.ontology_id);
    c.expect(ontologies == std::set<std::string>{"eventsA", "eventsB"},
             "Event members must span both ontologies");
  }

  testutil::TempDir tmp2("acceptance-e2e-2");
  auto config2 = base_config(tmp2.path / "out");
  config2.corpus_dir = testutil::testdata() / "minicorpus";
  c.expect(run_extract(config2) == 0, "second run must exit 0");
  c.expect(testutil::read_file(tmp2.path / "out/catalogue.json") == bytes,
           "catalogue.json must be byte-identical across runs");
}

// 9. scale smoke test: 50 synthetic ontologies, 4 workers
void criterion9(Check& c) {
  testutil::TempDir tmp("acceptance-scale");
  auto corpus = tmp.path / "corpus";
  std::filesystem::create_directories(corpus);

  const std::vector<std::string> words{"event", "agent",    "participant", "activity",
                                       "actor", "time",     "span",        "address",
                                       "city",  "building", "town",        "river",
                                       "water", "money",    "finance",     "bank"};
  std::mt19937 rng(4242);
  auto word = [&rng, &words]() { return words[rng() % words.size()]; };

  for (int o = 0; o < 50; ++o) {
    std::ostringstream ttl;
    ttl << "@prefix : <http://example.org/synth" << o << "#> .\n";
    ttl << "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n";
    ttl << "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";
    for (int p = 0; p < 25; ++p) {
      int a = 2 * p, b = 2 * p + 1;
      ttl << ":C" << a << " a owl:Class ; rdfs:label \"" << word() << " " << word()
          << "\"@en .\n";
      ttl << ":C" << b << " a owl:Class ; rdfs:label \"" << word() << "\"@en .\n";
      ttl << ":p" << p << " rdfs:domain :C" << a << " ; rdfs:range :C" << b
          << " ; rdfs:label \"" << word() << " " << word() << "\"@en .\n";
    }
    for (int r = 0; r < 10; ++r) {
      int cls = static_cast<int>(rng() % 50);
      int prop = static_cast<int>(rng() % 25);
      int filler = static_cast<int>(rng() % 50);
      ttl << ":C" << cls << " rdfs:subClassOf [ owl:onProperty :p" << prop
          << " ; owl:someValuesFrom :C" << filler << " ] .\n";
    }
    char name[32];
    std::snprintf(name, sizeof(name), "synth%02d.ttl", o);
    testutil::write_file(corpus / name, ttl.str());
  }

  auto config = base_config(tmp.path / "out");
  config.corpus_dir = corpus;
  config.jobs = 4;
  c.expect(run_extract(config) == 0, "synthetic corpus run must exit 0");

  auto cat = catalogue_from_json(json::parse(testutil::read_file(tmp.path / "out/catalogue.json")));
  auto manifest = json::parse(testutil::read_file(tmp.path / "out/manifest.json"));
  c.expect(manifest.at("skipped").get<int>() == 0, "no synthetic ontology may be skipped");

  // catalogue invariants
  size_t member_total = 0;
  std::map<std::string, std::set<int>> index_from_members;
  for (const auto& comp : cat.components) {
    member_total += comp.members.size();
    c.expect(!comp.name.empty(), "component names must be non-empty");
    for (const auto& m : comp.members) index_from_members[m.ontology_id].insert(comp.cluster_id);
  }
  c.expect(member_total == manifest.at("clusteredDocuments").get<size_t>(),
           "component members must add up to the clustered documents");
  c.expect(index_from_members.size() == cat.ontology_index.size(),
           "ontology index must cover exactly the member ontologies");
  for (const auto& [onto, ids] : cat.ontology_index) {
    c.expect(index_from_members.count(onto) == 1 &&
                 std::set<int>(ids.begin(), ids.end()) == index_from_members[onto],
             "ontology index must invert the membership relation for " + onto);
  }
  bool max_attained = cat.network.edges.empty();
  for (const auto& e : cat.network.edges) {
    c.expect(e.weight > 0.0 && e.weight <= 1.0, "network weight out of (0,1]");
    if (e.raw_count == cat.network.max_count) max_attained = true;
  }
  c.expect(max_attained, "some edge must attain the maximum raw count");
}

}  // namespace

int main() {
  criterion(1, "intensional graph rule fidelity", 1.0, criterion1);
  criterion(2, "greedy modularity vs brute-force oracle", 10.0, criterion2);
  criterion(3, "density-based refinement", 1.0, criterion3);
  criterion(4, "fragment/ontology overlap on the single-pattern fixture", 0.0, criterion4);
  criterion(5, "disambiguation strategies and frame closure", 0.0, criterion5);
  criterion(6, "k-means + elbow on the 3-blob fixture", 0.0, criterion6);
  criterion(7, "cluster network weights", 0.0, criterion7);
  criterion(8, "end-to-end mini-corpus catalogue", 5.0, criterion8);
  criterion(9, "50-ontology scale smoke test", 60.0, criterion9);

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
