#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace concomp {

enum class TermKind { Iri, Blank, Literal };

// A single RDF term. For literals `value` holds the lexical form; plain
// xsd:string literals are normalized to an empty datatype.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string datatype;
  std::string lang;

  static Term iri(std::string v) { return {TermKind::Iri, std::move(v), {}, {}}; }
  static Term blank(std::string id) { return {TermKind::Blank, std::move(id), {}, {}}; }
  static Term literal(std::string lex, std::string dt = "", std::string language = "") {
    return {TermKind::Literal, std::move(lex), std::move(dt), std::move(language)};
  }

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::Blank; }
  bool is_literal() const { return kind == TermKind::Literal; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;  // always an IRI
  Term object;

  auto operator<=>(const Triple&) const = default;
};

namespace vocab {

inline const std::string rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string owl_ns = "http://www.w3.org/2002/07/owl#";
inline const std::string xsd_ns = "http://www.w3.org/2001/XMLSchema#";

inline const std::string rdf_type = rdf_ns + "type";
inline const std::string rdf_first = rdf_ns + "first";
inline const std::string rdf_rest = rdf_ns + "rest";
inline const std::string rdf_nil = rdf_ns + "nil";

inline const std::string rdfs_label = rdfs_ns + "label";
inline const std::string rdfs_comment = rdfs_ns + "comment";
inline const std::string rdfs_domain = rdfs_ns + "domain";
inline const std::string rdfs_range = rdfs_ns + "range";
inline const std::string rdfs_sub_class_of = rdfs_ns + "subClassOf";
inline const std::string rdfs_sub_property_of = rdfs_ns + "subPropertyOf";

inline const std::string owl_class = owl_ns + "Class";
inline const std::string owl_thing = owl_ns + "Thing";
inline const std::string owl_restriction = owl_ns + "Restriction";
inline const std::string owl_object_property = owl_ns + "ObjectProperty";
inline const std::string owl_datatype_property = owl_ns + "DatatypeProperty";
inline const std::string owl_annotation_property = owl_ns + "AnnotationProperty";
inline const std::string owl_equivalent_class = owl_ns + "equivalentClass";
inline const std::string owl_equivalent_property = owl_ns + "equivalentProperty";
inline const std::string owl_inverse_of = owl_ns + "inverseOf";
inline const std::string owl_on_property = owl_ns + "onProperty";
inline const std::string owl_some_values_from = owl_ns + "someValuesFrom";
inline const std::string owl_all_values_from = owl_ns + "allValuesFrom";
inline const std::string owl_has_value = owl_ns + "hasValue";
inline const std::string owl_min_cardinality = owl_ns + "minCardinality";
inline const std::string owl_max_cardinality = owl_ns + "maxCardinality";
inline const std::string owl_cardinality = owl_ns + "cardinality";
inline const std::string owl_min_qualified_cardinality = owl_ns + "minQualifiedCardinality";
inline const std::string owl_max_qualified_cardinality = owl_ns + "maxQualifiedCardinality";
inline const std::string owl_qualified_cardinality = owl_ns + "qualifiedCardinality";
inline const std::string owl_on_class = owl_ns + "onClass";
inline const std::string owl_on_data_range = owl_ns + "onDataRange";

inline const std::string xsd_string = xsd_ns + "string";
inline const std::string xsd_integer = xsd_ns + "integer";
inline const std::string xsd_decimal = xsd_ns + "decimal";
inline const std::string xsd_double = xsd_ns + "double";
inline const std::string xsd_boolean = xsd_ns + "boolean";

}  // namespace vocab

// A parsed ontology. Triples are sorted and duplicate-free; blank node ids
// are scoped to this document and never meaningful across documents.
struct OntologyDoc {
  std::string id;
  std::vector<Triple> triples;
  // iri -> (language tag, text) for every rdfs:label triple with a literal object
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> label_index;
};

enum class RdfFormat { Auto, Turtle, NTriples };

// Builds a document from raw triples: sorts, deduplicates, indexes labels.
OntologyDoc make_document(std::string id, std::vector<Triple> triples);

// Parses a .ttl/.nt file. Relative IRIs resolve against file://<path> unless
// the document declares a base. Throws ParseError / IoError.
OntologyDoc load_ontology(const std::filesystem::path& path, const std::string& id,
                          RdfFormat format = RdfFormat::Auto);

// All rdfs:label values whose tag equals `language` or is absent.
std::vector<std::string> labels_of(const OntologyDoc& doc, const std::string& entity,
                                   const std::string& language);

struct DomainRangePair {
  std::string property;
  Term domain;  // Iri or Blank; blank pairs are flagged for the caller to drop
  Term range;
};

// Cartesian product of declared domains x ranges, one list entry per pair,
// for every property with at least one of each.
std::vector<DomainRangePair> domain_range_pairs(const OntologyDoc& doc);

enum class RestrictionKind {
  SomeValuesFrom,
  AllValuesFrom,
  HasValue,
  MinCardinality,
  MaxCardinality,
  Cardinality,
};

struct RestrictionLink {
  std::string subject_class;  // named class the restriction is attached to
  std::string property;       // owl:onProperty value
  Term filler;                // named filler, blank expression, value, or bare count
  RestrictionKind kind;
};

// One entry per facet of each restriction reached through one blank-node hop
// from rdfs:subClassOf / owl:equivalentClass. For qualified cardinalities the
// filler is the owl:onClass / owl:onDataRange value.
std::vector<RestrictionLink> restriction_links(const OntologyDoc& doc);

std::vector<Triple> type_triples(const OntologyDoc& doc, const std::string& entity);
// rdfs:subPropertyOf triples plus owl:equivalentProperty in either position.
std::vector<Triple> super_equiv_properties(const OntologyDoc& doc, const std::string& property);
// rdfs:subClassOf / owl:equivalentClass triples with named-class objects only.
std::vector<Triple> super_equiv_classes(const OntologyDoc& doc, const std::string& cls);
std::vector<Triple> inverse_of(const OntologyDoc& doc, const std::string& property);

}  // namespace concomp
