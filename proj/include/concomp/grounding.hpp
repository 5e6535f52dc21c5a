#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "concomp/vdoc.hpp"

namespace concomp {

// token -> multiplicity
using Bag = std::map<std::string, int>;

// WordNet-style lemma/synset tables loaded from TSV snapshots.
struct Lexicon {
  // (lemma, pos) -> synsets in sense-rank order
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> lemma_index;
  // undirected semantic relations
  std::map<std::string, std::set<std::string>> relations;

  // lemma file: lemma<TAB>pos<TAB>synset1,synset2,...  relations file:
  // synsetA<TAB>synsetB. '#' lines are comments. relations_path may be empty.
  static Lexicon load(const std::filesystem::path& lemmas_path,
                      const std::filesystem::path& relations_path);

  // first lemma listing the synset, for naming fallbacks
  std::string first_lemma_of(const std::string& synset) const;
};

// synset -> evoked frames plus the frame inheritance hierarchy.
struct FrameMap {
  std::map<std::string, std::set<std::string>> close_match;
  std::map<std::string, std::set<std::string>> inherits;  // child -> parents (DAG)

  static FrameMap load(const std::filesystem::path& close_match_path,
                       const std::filesystem::path& hierarchy_path);

  // transitive ancestors, excluding the frame itself
  std::set<std::string> ancestors(const std::string& frame) const;
};

enum class WsdStrategy { FirstSense, GraphPpr };

WsdStrategy wsd_strategy_from_string(const std::string& s);
std::string to_string(WsdStrategy s);

// Personalized PageRank over the lexicon relations, teleporting uniformly to
// the seed set. Damping 0.85 by default; stops after max_iterations or when
// the L1 change drops below tolerance. Scores over all graph + seed nodes,
// normalized to sum 1.
std::map<std::string, double> personalized_pagerank(const Lexicon& lexicon,
                                                    const std::set<std::string>& seeds,
                                                    double damping = 0.85,
                                                    int max_iterations = 30,
                                                    double tolerance = 1e-9);

// One synset per in-lexicon token (noun, then verb, then adjective lookup).
// first-sense takes the rank-1 synset; graph-ppr takes each token's highest
// scoring candidate, ties resolved by sense rank.
Bag disambiguate(const std::vector<std::string>& terms, const Lexicon& lexicon,
                 WsdStrategy strategy);

// close-match frames of every synset occurrence, expanded with the full
// ancestor closure (ancestors counted once per evoking occurrence).
Bag evoke_frames(const Bag& synsets, const FrameMap& frames);

struct GroundedDocument {
  std::string community_id;
  std::string ontology_id;
  Bag synsets;
  Bag frames;
};

GroundedDocument ground(const VirtualDocument& vdoc, const Lexicon& lexicon,
                        const FrameMap& frames, WsdStrategy strategy);

}  // namespace concomp
