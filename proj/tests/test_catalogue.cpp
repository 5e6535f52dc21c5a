#include <doctest.h>

#include "concomp/catalogue.hpp"
#include "concomp/errors.hpp"
#include "testutil.hpp"

using namespace concomp;

namespace {

GroundedDocument gdoc(const std::string& onto, const std::string& comm, const Bag& synsets,
                      const Bag& frames) {
  GroundedDocument d;
  d.ontology_id = onto;
  d.community_id = comm;
  d.synsets = synsets;
  d.frames = frames;
  return d;
}

VirtualDocument vdoc(const std::string& onto, const std::string& comm,
                     std::vector<std::string> terms) {
  VirtualDocument v;
  v.ontology_id = onto;
  v.community_id = comm;
  v.terms = std::move(terms);
  return v;
}

Fragment frag(const std::string& onto, const std::string& comm) {
  Fragment f;
  f.ontology_id = onto;
  f.community_id = comm;
  return f;
}

struct Artifacts {
  ClusteringResult result;
  std::vector<GroundedDocument> grounded;
  std::vector<VirtualDocument> vdocs;
  std::vector<Fragment> fragments;
};

Artifacts two_cluster_artifacts() {
  Artifacts a;
  a.result.k = 2;
  a.result.assignment = {{"o1/c000", 0}, {"o2/c000", 0}, {"o1/c001", 1}};
  a.grounded = {gdoc("o1", "c000", {{"s-event", 2}}, {{"Event", 2}}),
                gdoc("o2", "c000", {{"s-activity", 1}}, {{"Activity", 1}, {"Event", 1}}),
                gdoc("o1", "c001", {{"s-time", 1}}, {{"Time", 1}})};
  a.vdocs = {vdoc("o1", "c000", {"event", "agent"}), vdoc("o2", "c000", {"activity"}),
             vdoc("o1", "c001", {"time", "span"})};
  a.fragments = {frag("o1", "c000"), frag("o2", "c000"), frag("o1", "c001")};
  return a;
}

}  // namespace

TEST_CASE("build_components") {
  auto a = two_cluster_artifacts();
  auto comps = build_components(a.result, a.grounded, a.vdocs, a.fragments, nullptr, {});
  REQUIRE(comps.size() == 2);

  SUBCASE("frequencies sum bag multiplicities") {
    CHECK(comps[0].frame_frequencies ==
          std::map<std::string, int>{{"Activity", 1}, {"Event", 3}});
    CHECK(comps[0].synset_frequencies ==
          std::map<std::string, int>{{"s-activity", 1}, {"s-event", 2}});
  }
  SUBCASE("name is the most frequent frame") {
    CHECK(comps[0].name == "Event");
    CHECK(comps[1].name == "Time");
  }
  SUBCASE("members carry fragment paths, sorted") {
    REQUIRE(comps[0].members.size() == 2);
    CHECK(comps[0].members[0].ontology_id == "o1");
    CHECK(comps[0].members[0].fragment_path == "fragments/o1/c000.ttl");
    CHECK(comps[0].members[1].ontology_id == "o2");
  }
  SUBCASE("description concatenates member terms") {
    CHECK(comps[0].description == "event agent activity");
  }
  SUBCASE("missing artifacts are an error") {
    a.fragments.pop_back();
    CHECK_THROWS_AS(build_components(a.result, a.grounded, a.vdocs, a.fragments, nullptr, {}),
                    MissingArtifactsError);
  }
}

TEST_CASE("naming fallbacks and overrides") {
  ClusteringResult r;
  r.k = 1;
  r.assignment = {{"o/c0", 0}};
  std::vector<VirtualDocument> vd{vdoc("o", "c0", {"event"})};
  std::vector<Fragment> fr{frag("o", "c0")};

  SUBCASE("frame count tie breaks lexicographically") {
    std::vector<GroundedDocument> g{gdoc("o", "c0", {}, {{"B", 3}, {"A", 3}})};
    auto comps = build_components(r, g, vd, fr, nullptr, {});
    CHECK(comps[0].name == "A");
  }
  SUBCASE("no frames falls back to the top synset's first lemma") {
    auto lex = Lexicon::load(testutil::testdata() / "resources" / "lemmas.tsv", "");
    std::vector<GroundedDocument> g{gdoc("o", "c0", {{"s-event", 2}, {"s-agent", 1}}, {})};
    auto comps = build_components(r, g, vd, fr, &lex, {});
    CHECK(comps[0].name == "event");
  }
  SUBCASE("nothing at all falls back to component-<id>") {
    std::vector<GroundedDocument> g{gdoc("o", "c0", {}, {})};
    auto comps = build_components(r, g, vd, fr, nullptr, {});
    CHECK(comps[0].name == "component-0");
  }
  SUBCASE("overrides win") {
    std::vector<GroundedDocument> g{gdoc("o", "c0", {}, {{"Event", 5}})};
    auto comps = build_components(r, g, vd, fr, nullptr, {{0, "Participation"}});
    CHECK(comps[0].name == "Participation");
  }
  SUBCASE("framester-style frame iris use their local name") {
    std::vector<GroundedDocument> g{
        gdoc("o", "c0", {}, {{"https://w3id.org/framester/framenet/abox/frame/Event", 1}})};
    auto comps = build_components(r, g, vd, fr, nullptr, {});
    CHECK(comps[0].name == "Event");
  }
}

TEST_CASE("build_network") {
  FrameMap fm;
  fm.inherits["Social_event"] = {"Event"};
  fm.inherits["f1"] = {"g", "h"};
  fm.inherits["f2"] = {"g"};

  auto comp = [](int id, std::vector<std::string> frames) {
    ConceptualComponent c;
    c.cluster_id = id;
    for (const auto& f : frames) c.frame_frequencies[f] = 1;
    return c;
  };

  SUBCASE("no inheritance, no edges") {
    auto net = build_network({comp(0, {"Event"}), comp(1, {"Time"})}, fm);
    CHECK(net.edges.empty());
    CHECK(net.max_count == 0);
  }
  SUBCASE("single link gets weight 1.0") {
    auto net = build_network({comp(0, {"Social_event"}), comp(1, {"Event"})}, fm);
    REQUIRE(net.edges.size() == 1);
    CHECK(net.edges[0].from == 0);
    CHECK(net.edges[0].to == 1);
    CHECK(net.edges[0].raw_count == 1);
    CHECK(net.edges[0].weight == doctest::Approx(1.0));
  }
  SUBCASE("weights normalize by the maximum raw count") {
    // a={f1,f2} -> b={g} counts 2; a -> c={h} counts 1
    auto net = build_network({comp(0, {"f1", "f2"}), comp(1, {"g"}), comp(2, {"h"})}, fm);
    REQUIRE(net.edges.size() == 2);
    CHECK(net.max_count == 2);
    CHECK(net.edges[0].raw_count == 2);
    CHECK(net.edges[0].weight == doctest::Approx(1.0));
    CHECK(net.edges[1].raw_count == 1);
    CHECK(net.edges[1].weight == doctest::Approx(0.5));
  }
  SUBCASE("raw count is monotone in the target frame set") {
    auto base = build_network({comp(0, {"f1", "f2"}), comp(1, {"g"})}, fm);
    auto bigger = build_network({comp(0, {"f1", "f2"}), comp(1, {"g", "h"})}, fm);
    CHECK(bigger.edges[0].raw_count >= base.edges[0].raw_count);
  }
  SUBCASE("one-step check over ancestor-closed sets equals the transitive check") {
    FrameMap deep;
    deep.inherits["a"] = {"b"};
    deep.inherits["b"] = {"c"};
    // closed sets: {a,b,c} and {c}; both a (via b) and b reach c
    auto net = build_network({comp(0, {"a", "b", "c"}), comp(1, {"c"})}, deep);
    REQUIRE(net.edges.size() == 1);
    CHECK(net.edges[0].raw_count == 2);
  }
}

TEST_CASE("generate_catalogue") {
  auto a = two_cluster_artifacts();
  auto comps = build_components(a.result, a.grounded, a.vdocs, a.fragments, nullptr, {});
  FrameMap fm;
  fm.inherits["Time"] = {"Event"};
  auto net = build_network(comps, fm);
  Provenance prov;
  prov.seed = 7;
  prov.k_max = 10;
  prov.chosen_k = 2;
  prov.strategy = "graph-ppr";
  prov.language = "en";
  auto cat = generate_catalogue(comps, net, prov);

  SUBCASE("ontology index inverts membership") {
    CHECK(cat.ontology_index.at("o1") == std::vector<int>{0, 1});
    CHECK(cat.ontology_index.at("o2") == std::vector<int>{0});
  }
  SUBCASE("member counts add up to the clustered communities") {
    size_t total = 0;
    for (const auto& c : cat.components) total += c.members.size();
    CHECK(total == a.result.assignment.size());
  }
  SUBCASE("whenever edges exist, some edge attains weight 1") {
    REQUIRE(!cat.network.edges.empty());
    bool has_one = false;
    for (const auto& e : cat.network.edges) {
      CHECK(e.weight > 0.0);
      CHECK(e.weight <= 1.0);
      if (e.weight == doctest::Approx(1.0)) has_one = true;
    }
    CHECK(has_one);
  }
  SUBCASE("serialization round-trip") {
    auto json = catalogue_to_json(cat);
    auto parsed = catalogue_from_json(json);
    CHECK(parsed == cat);
    CHECK(catalogue_to_json(parsed).dump() == json.dump());
  }
  SUBCASE("markdown and dot render") {
    auto md = catalogue_to_markdown(cat);
    CHECK(md.find("## 0: Event") != std::string::npos);
    auto dot = network_to_dot(cat);
    CHECK(dot.find("w=") != std::string::npos);
  }
}

TEST_CASE("single component, empty network") {
  ClusteringResult r;
  r.k = 1;
  r.assignment = {{"o/c0", 0}};
  auto comps = build_components(r, {gdoc("o", "c0", {{"s", 1}}, {{"F", 1}})},
                                {vdoc("o", "c0", {"x"})}, {frag("o", "c0")}, nullptr, {});
  auto cat = generate_catalogue(comps, ClusterNetwork{}, Provenance{});
  CHECK(cat.components.size() == 1);
  CHECK(cat.network.edges.empty());
  CHECK(catalogue_from_json(catalogue_to_json(cat)) == cat);
}
