#include "concomp/fragments.hpp"

#include <algorithm>
#include <set>

#include "concomp/errors.hpp"
#include "concomp/turtle.hpp"

namespace concomp {

CommunityEntities community_entities(const Community& community) {
  std::set<std::string> classes, properties;
  for (const auto& n : community.nodes) {
    if (auto* e = std::get_if<EntityNode>(&n)) {
      classes.insert(e->iri);
    } else {
      const auto& c = std::get<ContextNode>(n);
      classes.insert(c.source);
      classes.insert(c.target);
      properties.insert(c.property);
    }
  }
  classes.erase(vocab::owl_thing);
  properties.erase(vocab::owl_thing);
  CommunityEntities out;
  out.classes.assign(classes.begin(), classes.end());
  out.properties.assign(properties.begin(), properties.end());
  return out;
}

Fragment extract_fragment(const Community& community, const OntologyDoc& doc) {
  if (community.ontology_id != doc.id)
    throw OntologyMismatchError("community belongs to '" + community.ontology_id +
                                "', document is '" + doc.id + "'");

  auto ents = community_entities(community);
  std::set<std::string> classes(ents.classes.begin(), ents.classes.end());
  std::set<std::string> properties(ents.properties.begin(), ents.properties.end());

  std::set<std::string> all_iris;  // every IRI a community node mentions, owl:Thing included
  for (const auto& n : community.nodes) {
    if (auto* e = std::get_if<EntityNode>(&n)) {
      all_iris.insert(e->iri);
    } else {
      const auto& c = std::get<ContextNode>(n);
      all_iris.insert(c.source);
      all_iris.insert(c.property);
      all_iris.insert(c.target);
    }
  }

  std::set<Triple> triples;
  auto add = [&triples](const std::vector<Triple>& ts) { triples.insert(ts.begin(), ts.end()); };

  for (const auto& e : all_iris) add(type_triples(doc, e));

  for (const auto& p : properties) {
    for (const auto& t : doc.triples) {
      if (t.subject.is_iri() && t.subject.value == p &&
          (t.predicate.value == vocab::rdfs_domain || t.predicate.value == vocab::rdfs_range))
        triples.insert(t);
    }
    add(super_equiv_properties(doc, p));
    add(inverse_of(doc, p));
  }

  for (const auto& c : classes) add(super_equiv_classes(doc, c));

  // restrictions anchored in the community (by subject class or by property),
  // copied with their full blank-node closure plus the linking axiom
  std::map<std::string, std::vector<const Triple*>> by_blank;
  for (const auto& t : doc.triples)
    if (t.subject.is_blank()) by_blank[t.subject.value].push_back(&t);

  auto blank_closure = [&](const std::string& start) {
    std::vector<std::string> stack{start};
    std::set<std::string> seen{start};
    while (!stack.empty()) {
      std::string b = stack.back();
      stack.pop_back();
      auto it = by_blank.find(b);
      if (it == by_blank.end()) continue;
      for (const Triple* t : it->second) {
        triples.insert(*t);
        if (t->object.is_blank() && seen.insert(t->object.value).second)
          stack.push_back(t->object.value);
      }
    }
  };

  for (const auto& t : doc.triples) {
    bool link = t.predicate.value == vocab::rdfs_sub_class_of ||
                t.predicate.value == vocab::owl_equivalent_class;
    if (!link || !t.subject.is_iri() || !t.object.is_blank()) continue;
    auto bit = by_blank.find(t.object.value);
    if (bit == by_blank.end()) continue;
    std::string on_property;
    for (const Triple* bt : bit->second)
      if (bt->predicate.value == vocab::owl_on_property && bt->object.is_iri())
        on_property = bt->object.value;
    if (on_property.empty()) continue;
    if (!properties.count(on_property) && !classes.count(t.subject.value)) continue;
    triples.insert(t);
    blank_closure(t.object.value);
  }

  // labels make fragments readable and feed the virtual documents
  for (const auto& e : all_iris) {
    for (const auto& t : doc.triples) {
      if (t.predicate.value == vocab::rdfs_label && t.subject.is_iri() && t.subject.value == e)
        triples.insert(t);
    }
  }

  Fragment f;
  f.community_id = community.id;
  f.ontology_id = community.ontology_id;
  f.triples.assign(triples.begin(), triples.end());
  f.entities.assign(all_iris.begin(), all_iris.end());
  return f;
}

std::string fragment_to_turtle(const Fragment& f) { return to_turtle(f.triples); }

}  // namespace concomp
