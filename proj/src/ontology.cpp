#include "concomp/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "concomp/errors.hpp"
#include "concomp/turtle.hpp"

namespace concomp {

OntologyDoc make_document(std::string id, std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  OntologyDoc doc;
  doc.id = std::move(id);
  doc.triples = std::move(triples);
  for (const auto& t : doc.triples) {
    if (t.predicate.value == vocab::rdfs_label && t.subject.is_iri() && t.object.is_literal()) {
      doc.label_index[t.subject.value].emplace_back(t.object.lang, t.object.value);
    }
  }
  return doc;
}

OntologyDoc load_ontology(const std::filesystem::path& path, const std::string& id,
                          RdfFormat format) {
  (void)format;  // Turtle is a superset of N-Triples; one grammar covers both
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  std::string base = "file://" + std::filesystem::absolute(path).generic_string();
  return make_document(id, parse_rdf(buf.str(), base));
}

std::vector<std::string> labels_of(const OntologyDoc& doc, const std::string& entity,
                                   const std::string& language) {
  std::vector<std::string> out;
  auto it = doc.label_index.find(entity);
  if (it == doc.label_index.end()) return out;
  for (const auto& [lang, text] : it->second) {
    if (lang.empty() || lang == language) out.push_back(text);
  }
  return out;
}

std::vector<DomainRangePair> domain_range_pairs(const OntologyDoc& doc) {
  std::map<std::string, std::vector<Term>> domains, ranges;
  for (const auto& t : doc.triples) {
    if (!t.subject.is_iri() || t.object.is_literal()) continue;
    if (t.predicate.value == vocab::rdfs_domain) domains[t.subject.value].push_back(t.object);
    if (t.predicate.value == vocab::rdfs_range) ranges[t.subject.value].push_back(t.object);
  }
  std::vector<DomainRangePair> out;
  for (const auto& [prop, ds] : domains) {
    auto rit = ranges.find(prop);
    if (rit == ranges.end()) continue;
    for (const auto& d : ds)
      for (const auto& r : rit->second) out.push_back({prop, d, r});
  }
  return out;
}

std::vector<RestrictionLink> restriction_links(const OntologyDoc& doc) {
  // index triples by blank subject for the one-hop restriction walk
  std::map<std::string, std::vector<const Triple*>> by_blank;
  for (const auto& t : doc.triples) {
    if (t.subject.is_blank()) by_blank[t.subject.value].push_back(&t);
  }

  std::vector<RestrictionLink> out;
  for (const auto& t : doc.triples) {
    bool link = t.predicate.value == vocab::rdfs_sub_class_of ||
                t.predicate.value == vocab::owl_equivalent_class;
    if (!link || !t.subject.is_iri() || !t.object.is_blank()) continue;
    auto bit = by_blank.find(t.object.value);
    if (bit == by_blank.end()) continue;

    std::string property;
    Term on_class, on_data_range;
    bool has_on_class = false, has_on_data_range = false;
    for (const Triple* bt : bit->second) {
      if (bt->predicate.value == vocab::owl_on_property && bt->object.is_iri())
        property = bt->object.value;
      if (bt->predicate.value == vocab::owl_on_class) {
        on_class = bt->object;
        has_on_class = true;
      }
      if (bt->predicate.value == vocab::owl_on_data_range) {
        on_data_range = bt->object;
        has_on_data_range = true;
      }
    }
    if (property.empty()) continue;

    for (const Triple* bt : bit->second) {
      const std::string& p = bt->predicate.value;
      RestrictionKind kind;
      Term filler = bt->object;
      if (p == vocab::owl_some_values_from) {
        kind = RestrictionKind::SomeValuesFrom;
      } else if (p == vocab::owl_all_values_from) {
        kind = RestrictionKind::AllValuesFrom;
      } else if (p == vocab::owl_has_value) {
        kind = RestrictionKind::HasValue;
      } else if (p == vocab::owl_min_cardinality || p == vocab::owl_min_qualified_cardinality) {
        kind = RestrictionKind::MinCardinality;
      } else if (p == vocab::owl_max_cardinality || p == vocab::owl_max_qualified_cardinality) {
        kind = RestrictionKind::MaxCardinality;
      } else if (p == vocab::owl_cardinality || p == vocab::owl_qualified_cardinality) {
        kind = RestrictionKind::Cardinality;
      } else {
        continue;
      }
      if (kind == RestrictionKind::MinCardinality || kind == RestrictionKind::MaxCardinality ||
          kind == RestrictionKind::Cardinality) {
        if (has_on_class)
          filler = on_class;
        else if (has_on_data_range)
          filler = on_data_range;
      }
      out.push_back({t.subject.value, property, filler, kind});
    }
  }
  return out;
}

static std::vector<Triple> by_subject_predicate(const OntologyDoc& doc, const std::string& subject,
                                                const std::string& predicate) {
  std::vector<Triple> out;
  for (const auto& t : doc.triples) {
    if (t.subject.is_iri() && t.subject.value == subject && t.predicate.value == predicate)
      out.push_back(t);
  }
  return out;
}

std::vector<Triple> type_triples(const OntologyDoc& doc, const std::string& entity) {
  return by_subject_predicate(doc, entity, vocab::rdf_type);
}

std::vector<Triple> super_equiv_properties(const OntologyDoc& doc, const std::string& property) {
  std::vector<Triple> out = by_subject_predicate(doc, property, vocab::rdfs_sub_property_of);
  for (const auto& t : doc.triples) {
    if (t.predicate.value != vocab::owl_equivalent_property) continue;
    bool subj = t.subject.is_iri() && t.subject.value == property;
    bool obj = t.object.is_iri() && t.object.value == property;
    if (subj || obj) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> super_equiv_classes(const OntologyDoc& doc, const std::string& cls) {
  std::vector<Triple> out;
  for (const auto& t : doc.triples) {
    if (t.predicate.value == vocab::rdfs_sub_class_of) {
      if (t.subject.is_iri() && t.subject.value == cls && t.object.is_iri()) out.push_back(t);
    } else if (t.predicate.value == vocab::owl_equivalent_class) {
      if (!t.subject.is_iri() || !t.object.is_iri()) continue;
      if (t.subject.value == cls || t.object.value == cls) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> inverse_of(const OntologyDoc& doc, const std::string& property) {
  std::vector<Triple> out;
  for (const auto& t : doc.triples) {
    if (t.predicate.value != vocab::owl_inverse_of) continue;
    bool subj = t.subject.is_iri() && t.subject.value == property;
    bool obj = t.object.is_iri() && t.object.value == property;
    if (subj || obj) out.push_back(t);
  }
  return out;
}

}  // namespace concomp
