#include "concomp/intensional.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

std::string local_name(const std::string& iri) {
  auto hash = iri.find_last_of('#');
  if (hash != std::string::npos && hash + 1 < iri.size()) return iri.substr(hash + 1);
  auto slash = iri.find_last_of('/');
  if (slash != std::string::npos && slash + 1 < iri.size()) return iri.substr(slash + 1);
  return iri;
}

// Properties declared as object or datatype properties get owl:Thing
// substituted for missing sides; annotation properties never produce arcs.
void collect_property_declarations(const OntologyDoc& doc, std::set<std::string>& declared,
                                   std::set<std::string>& annotation) {
  for (const auto& t : doc.triples) {
    if (t.predicate.value != vocab::rdf_type || !t.subject.is_iri() || !t.object.is_iri()) continue;
    if (t.object.value == vocab::owl_object_property || t.object.value == vocab::owl_datatype_property)
      declared.insert(t.subject.value);
    if (t.object.value == vocab::owl_annotation_property) annotation.insert(t.subject.value);
  }
}

}  // namespace

std::string node_label(const IGNode& n) {
  if (auto* e = std::get_if<EntityNode>(&n)) return local_name(e->iri);
  const auto& c = std::get<ContextNode>(n);
  return local_name(c.source) + "-" + local_name(c.property) + "-" + local_name(c.target);
}

size_t IntensionalGraph::context_count() const {
  return static_cast<size_t>(std::count_if(nodes.begin(), nodes.end(), is_context));
}

std::vector<std::vector<int>> IntensionalGraph::adjacency() const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int IntensionalGraph::index_of(const IGNode& n) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), n);
  if (it == nodes.end() || *it != n) return -1;
  return static_cast<int>(it - nodes.begin());
}

std::set<LabelledArc> derive_arcs_r1(const OntologyDoc& doc) {
  std::set<std::string> declared, annotation;
  collect_property_declarations(doc, declared, annotation);

  std::set<LabelledArc> arcs;
  std::map<std::string, std::set<std::string>> named_domains, named_ranges;
  for (const auto& pr : domain_range_pairs(doc)) {
    if (annotation.count(pr.property)) continue;
    if (pr.domain.is_iri() && pr.range.is_iri()) {
      arcs.insert({pr.property, pr.domain.value, pr.range.value});
    }
  }
  // collect single-sided named declarations (domain_range_pairs only reports
  // properties that have both sides)
  for (const auto& t : doc.triples) {
    if (!t.subject.is_iri() || !t.object.is_iri()) continue;
    if (t.predicate.value == vocab::rdfs_domain) named_domains[t.subject.value].insert(t.object.value);
    if (t.predicate.value == vocab::rdfs_range) named_ranges[t.subject.value].insert(t.object.value);
  }
  for (const auto& p : declared) {
    if (annotation.count(p)) continue;
    const auto* ds = named_domains.count(p) ? &named_domains[p] : nullptr;
    const auto* rs = named_ranges.count(p) ? &named_ranges[p] : nullptr;
    if (!ds && !rs) {
      arcs.insert({p, vocab::owl_thing, vocab::owl_thing});
    } else if (ds && !rs) {
      for (const auto& d : *ds) arcs.insert({p, d, vocab::owl_thing});
    } else if (!ds && rs) {
      for (const auto& r : *rs) arcs.insert({p, vocab::owl_thing, r});
    }
  }
  return arcs;
}

std::set<LabelledArc> derive_arcs_r2(const OntologyDoc& doc) {
  std::set<std::string> declared, annotation;
  collect_property_declarations(doc, declared, annotation);

  std::map<std::string, std::set<std::string>> named_ranges;
  for (const auto& t : doc.triples) {
    if (t.predicate.value == vocab::rdfs_range && t.subject.is_iri() && t.object.is_iri())
      named_ranges[t.subject.value].insert(t.object.value);
  }

  std::set<LabelledArc> arcs;
  for (const auto& rl : restriction_links(doc)) {
    if (annotation.count(rl.property)) continue;
    switch (rl.kind) {
      case RestrictionKind::SomeValuesFrom:
      case RestrictionKind::AllValuesFrom:
        // class expressions (blank fillers) are ignored
        if (rl.filler.is_iri()) arcs.insert({rl.property, rl.subject_class, rl.filler.value});
        break;
      case RestrictionKind::HasValue: {
        if (!rl.filler.is_iri()) break;
        // resolve through the value's asserted type; owl meta-types don't count
        std::set<std::string> types;
        for (const auto& tt : type_triples(doc, rl.filler.value)) {
          if (tt.object.is_iri() && tt.object.value.rfind(vocab::owl_ns, 0) != 0)
            types.insert(tt.object.value);
        }
        if (types.size() == 1) arcs.insert({rl.property, rl.subject_class, *types.begin()});
        break;
      }
      case RestrictionKind::MinCardinality:
      case RestrictionKind::MaxCardinality:
      case RestrictionKind::Cardinality: {
        if (rl.filler.is_iri()) {  // qualified: onClass / onDataRange
          arcs.insert({rl.property, rl.subject_class, rl.filler.value});
        } else if (rl.filler.is_literal()) {
          auto it = named_ranges.find(rl.property);
          if (it != named_ranges.end()) {
            for (const auto& r : it->second) arcs.insert({rl.property, rl.subject_class, r});
          } else {
            arcs.insert({rl.property, rl.subject_class, vocab::owl_thing});
          }
        }
        break;
      }
    }
  }
  return arcs;
}

IntensionalGraph expand_r3(const std::set<LabelledArc>& arcs, std::string ontology_id) {
  std::set<IGNode> nodes;
  for (const auto& a : arcs) {
    nodes.insert(EntityNode{a.source});
    nodes.insert(EntityNode{a.target});
    nodes.insert(ContextNode{a.source, a.property, a.target});
  }
  IntensionalGraph g;
  g.ontology_id = std::move(ontology_id);
  g.nodes.assign(nodes.begin(), nodes.end());

  std::set<std::pair<int, int>> edges;
  auto add_edge = [&](const IGNode& x, const IGNode& y) {
    int a = g.index_of(x), b = g.index_of(y);
    edges.insert({std::min(a, b), std::max(a, b)});
  };
  for (const auto& a : arcs) {
    ContextNode ctx{a.source, a.property, a.target};
    add_edge(EntityNode{a.source}, ctx);
    add_edge(ctx, EntityNode{a.target});
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

IntensionalGraph build_intensional_graph(const OntologyDoc& doc) {
  std::set<LabelledArc> arcs = derive_arcs_r1(doc);
  auto r2 = derive_arcs_r2(doc);
  arcs.insert(r2.begin(), r2.end());
  return expand_r3(arcs, doc.id);
}

std::string to_dot(const IntensionalGraph& g) {
  std::ostringstream os;
  os << "graph \"" << g.ontology_id << "\" {\n";
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    const char* shape = is_entity(g.nodes[i]) ? "ellipse" : "box";
    os << "  n" << i << " [label=\"" << node_label(g.nodes[i]) << "\", shape=" << shape << "];\n";
  }
  for (auto [a, b] : g.edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json graph_to_json(const IntensionalGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.nodes) {
    if (auto* e = std::get_if<EntityNode>(&n)) {
      nodes.push_back({{"kind", "entity"}, {"iri", e->iri}});
    } else {
      const auto& c = std::get<ContextNode>(n);
      nodes.push_back({{"kind", "context"},
                       {"source", c.source},
                       {"property", c.property},
                       {"target", c.target}});
    }
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return {{"ontologyId", g.ontology_id}, {"nodes", nodes}, {"edges", edges}};
}

IntensionalGraph graph_from_json(const nlohmann::json& j) {
  IntensionalGraph g;
  g.ontology_id = j.at("ontologyId").get<std::string>();
  for (const auto& n : j.at("nodes")) {
    if (n.at("kind") == "entity") {
      g.nodes.push_back(EntityNode{n.at("iri").get<std::string>()});
    } else {
      g.nodes.push_back(ContextNode{n.at("source").get<std::string>(),
                                    n.at("property").get<std::string>(),
                                    n.at("target").get<std::string>()});
    }
  }
  for (const auto& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

}  // namespace concomp
