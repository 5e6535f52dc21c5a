#include <doctest.h>

#include <cctype>

#include "concomp/vdoc.hpp"
#include "testutil.hpp"

using namespace concomp;
using testutil::parse_doc;
using testutil::toy1_ns;

namespace {

Community toy1_full_community() {
  auto g = build_intensional_graph(testutil::load_toy1());
  Community c;
  c.id = "c000";
  c.ontology_id = "toy1";
  c.nodes = g.nodes;
  return c;
}

}  // namespace

TEST_CASE("local_id_tokens") {
  CHECK(local_id_tokens("http://example.org/ontology#hasParticipant") ==
        std::vector<std::string>{"has", "participant"});
  CHECK(local_id_tokens("http://example.org/cidoc-crm/E5_Event") ==
        std::vector<std::string>{"e", "event"});
  CHECK(local_id_tokens("http://example.org/onto#TimeSpan") ==
        std::vector<std::string>{"time", "span"});
  CHECK(local_id_tokens("http://example.org/path/to/term") == std::vector<std::string>{"term"});
  CHECK(local_id_tokens("http://example.org/HTTPServer") ==
        std::vector<std::string>{"http", "server"});
}

TEST_CASE("toy1 community terms, sorted-entity-iri order") {
  auto vd = build_virtual_document(toy1_full_community(), testutil::load_toy1());
  // entities in IRI order: Agent, Event, TimeSpan, atTime (no label -> local
  // id), hasParticipant
  CHECK(vd.terms == std::vector<std::string>{"agent", "event", "time", "span", "at", "has",
                                             "participant"});
}

TEST_CASE("excluded namespaces produce empty documents") {
  auto doc = parse_doc("x", "");
  Community c;
  c.ontology_id = "x";
  c.nodes = {EntityNode{vocab::xsd_string}};
  CHECK(build_virtual_document(c, doc).terms.empty());
}

TEST_CASE("identical label and local id dedupe") {
  auto doc = parse_doc("d", "@prefix : <http://example.org/d#> .\n"
                            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                            ":Event rdfs:label \"Event\"@en .\n");
  Community c;
  c.ontology_id = "d";
  c.nodes = {EntityNode{"http://example.org/d#Event"}};
  CHECK(build_virtual_document(c, doc).terms == std::vector<std::string>{"event"});
}

TEST_CASE("single-letter and numeric tokens drop at document level") {
  auto doc = parse_doc("n", "@prefix : <http://example.org/n#> .\n"
                            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                            ":E5_Event rdfs:label \"E5 99 Event\"@en .\n");
  Community c;
  c.ontology_id = "n";
  c.nodes = {EntityNode{"http://example.org/n#E5_Event"}};
  CHECK(build_virtual_document(c, doc).terms == std::vector<std::string>{"event"});
}

TEST_CASE("comments are never read") {
  auto doc = parse_doc("cm", "@prefix : <http://example.org/cm#> .\n"
                             "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                             ":Thing rdfs:comment \"noisy explanation here\"@en .\n");
  Community c;
  c.ontology_id = "cm";
  c.nodes = {EntityNode{"http://example.org/cm#Thing"}};
  CHECK(build_virtual_document(c, doc).terms == std::vector<std::string>{"thing"});
}

TEST_CASE("language filter uses the requested tag") {
  auto doc = parse_doc("lg", "@prefix : <http://example.org/lg#> .\n"
                             "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                             ":Casa rdfs:label \"house\"@en , \"casa\"@it .\n");
  Community c;
  c.ontology_id = "lg";
  c.nodes = {EntityNode{"http://example.org/lg#Casa"}};
  CHECK(build_virtual_document(c, doc, "en").terms == std::vector<std::string>{"house"});
  CHECK(build_virtual_document(c, doc, "it").terms == std::vector<std::string>{"casa"});
}

TEST_CASE("token hygiene on the toy1 fixture") {
  auto vd = build_virtual_document(toy1_full_community(), testutil::load_toy1());
  for (const auto& t : vd.terms) {
    CHECK(!t.empty());
    for (char ch : t) {
      CHECK(!std::isspace(static_cast<unsigned char>(ch)));
      CHECK(!std::isupper(static_cast<unsigned char>(ch)));
    }
  }
  // duplicate-free
  auto sorted = vd.terms;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}
