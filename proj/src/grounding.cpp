#include "concomp/grounding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

// Line-oriented TSV with '#' comments; yields the split fields.
void for_each_tsv_row(const std::filesystem::path& path,
                      const std::function<void(const std::vector<std::string>&, int)>& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    fn(fields, lineno);
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::vector<std::string>& pos_order() {
  static const std::vector<std::string> order{"n", "v", "a"};
  return order;
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& lemmas_path,
                      const std::filesystem::path& relations_path) {
  Lexicon lex;
  for_each_tsv_row(lemmas_path, [&](const std::vector<std::string>& f, int line) {
    if (f.size() != 3) throw ParseError(line, "expected lemma<TAB>pos<TAB>synsets");
    auto synsets = split_commas(f[2]);
    if (synsets.empty()) throw ParseError(line, "empty synset list");
    lex.lemma_index[{f[0], f[1]}] = std::move(synsets);
  });
  if (!relations_path.empty()) {
    for_each_tsv_row(relations_path, [&](const std::vector<std::string>& f, int line) {
      if (f.size() != 2) throw ParseError(line, "expected synsetA<TAB>synsetB");
      lex.relations[f[0]].insert(f[1]);
      lex.relations[f[1]].insert(f[0]);
    });
  }
  return lex;
}

std::string Lexicon::first_lemma_of(const std::string& synset) const {
  for (const auto& [key, synsets] : lemma_index) {
    if (std::find(synsets.begin(), synsets.end(), synset) != synsets.end()) return key.first;
  }
  return {};
}

FrameMap FrameMap::load(const std::filesystem::path& close_match_path,
                        const std::filesystem::path& hierarchy_path) {
  FrameMap fm;
  for_each_tsv_row(close_match_path, [&](const std::vector<std::string>& f, int line) {
    if (f.size() != 2) throw ParseError(line, "expected synset<TAB>frame");
    fm.close_match[f[0]].insert(f[1]);
  });
  for_each_tsv_row(hierarchy_path, [&](const std::vector<std::string>& f, int line) {
    if (f.size() != 2) throw ParseError(line, "expected childFrame<TAB>parentFrame");
    fm.inherits[f[0]].insert(f[1]);
  });

  // the hierarchy must be a DAG; walk every frame with an explicit stack
  std::map<std::string, int> state;  // 0 new, 1 open, 2 done
  for (const auto& [child, parents] : fm.inherits) {
    if (state[child] == 2) continue;
    std::vector<std::pair<std::string, bool>> stack{{child, false}};
    while (!stack.empty()) {
      auto [frame, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        state[frame] = 2;
        continue;
      }
      if (state[frame] == 2) continue;
      if (state[frame] == 1) throw Error("frame hierarchy contains a cycle at " + frame);
      state[frame] = 1;
      stack.push_back({frame, true});
      auto it = fm.inherits.find(frame);
      if (it != fm.inherits.end()) {
        for (const auto& p : it->second) {
          if (state[p] == 1) throw Error("frame hierarchy contains a cycle at " + p);
          if (state[p] == 0) stack.push_back({p, false});
        }
      }
    }
  }
  return fm;
}

std::set<std::string> FrameMap::ancestors(const std::string& frame) const {
  std::set<std::string> out;
  std::vector<std::string> stack{frame};
  while (!stack.empty()) {
    std::string f = stack.back();
    stack.pop_back();
    auto it = inherits.find(f);
    if (it == inherits.end()) continue;
    for (const auto& p : it->second)
      if (out.insert(p).second) stack.push_back(p);
  }
  return out;
}

WsdStrategy wsd_strategy_from_string(const std::string& s) {
  if (s == "first-sense") return WsdStrategy::FirstSense;
  if (s == "graph-ppr") return WsdStrategy::GraphPpr;
  throw Error("unknown wsd strategy '" + s + "'");
}

std::string to_string(WsdStrategy s) {
  return s == WsdStrategy::FirstSense ? "first-sense" : "graph-ppr";
}

std::map<std::string, double> personalized_pagerank(const Lexicon& lexicon,
                                                    const std::set<std::string>& seeds,
                                                    double damping, int max_iterations,
                                                    double tolerance) {
  // node universe: relation graph plus seeds (seeds may be isolated)
  std::vector<std::string> nodes;
  {
    std::set<std::string> all(seeds.begin(), seeds.end());
    for (const auto& [a, nbrs] : lexicon.relations) {
      all.insert(a);
      all.insert(nbrs.begin(), nbrs.end());
    }
    nodes.assign(all.begin(), all.end());
  }
  if (nodes.empty() || seeds.empty()) return {};

  std::map<std::string, int> index;
  for (size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& [a, nbrs] : lexicon.relations) {
    int ia = index[a];
    for (const auto& b : nbrs) adj[ia].push_back(index[b]);
  }

  std::vector<double> teleport(nodes.size(), 0.0);
  for (const auto& s : seeds) teleport[index.at(s)] = 1.0 / static_cast<double>(seeds.size());

  std::vector<double> score = teleport, next(nodes.size());
  for (int iter = 0; iter < max_iterations; ++iter) {
    double dangling = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i)
      if (adj[i].empty()) dangling += score[i];

    for (size_t i = 0; i < nodes.size(); ++i)
      next[i] = (1.0 - damping) * teleport[i] + damping * dangling * teleport[i];
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (adj[i].empty()) continue;
      double share = damping * score[i] / static_cast<double>(adj[i].size());
      for (int j : adj[i]) next[j] += share;
    }

    double total = 0.0;
    for (double v : next) total += v;
    for (double& v : next) v /= total;

    double delta = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) delta += std::abs(next[i] - score[i]);
    score.swap(next);
    if (delta < tolerance) break;
  }

  std::map<std::string, double> out;
  for (size_t i = 0; i < nodes.size(); ++i) out[nodes[i]] = score[i];
  return out;
}

namespace {

const std::vector<std::string>* candidates_for(const std::string& token, const Lexicon& lexicon) {
  for (const auto& pos : pos_order()) {
    auto it = lexicon.lemma_index.find({token, pos});
    if (it != lexicon.lemma_index.end()) return &it->second;
  }
  return nullptr;
}

}  // namespace

Bag disambiguate(const std::vector<std::string>& terms, const Lexicon& lexicon,
                 WsdStrategy strategy) {
  Bag out;
  if (strategy == WsdStrategy::FirstSense || lexicon.relations.empty()) {
    for (const auto& t : terms) {
      if (const auto* cands = candidates_for(t, lexicon)) out[cands->front()] += 1;
    }
    return out;
  }

  // graph-ppr: one walk seeded on all candidates of all tokens
  std::set<std::string> seeds;
  std::vector<const std::vector<std::string>*> per_token;
  for (const auto& t : terms) {
    const auto* cands = candidates_for(t, lexicon);
    per_token.push_back(cands);
    if (cands) seeds.insert(cands->begin(), cands->end());
  }
  if (seeds.empty()) return out;
  auto scores = personalized_pagerank(lexicon, seeds);

  for (const auto* cands : per_token) {
    if (!cands) continue;
    const std::string* best = nullptr;
    double best_score = -1.0;
    for (const auto& c : *cands) {  // rank order; strictly-greater keeps rank ties
      auto it = scores.find(c);
      double s = it == scores.end() ? 0.0 : it->second;
      if (!best || s > best_score) {
        best = &c;
        best_score = s;
      }
    }
    out[*best] += 1;
  }
  return out;
}

Bag evoke_frames(const Bag& synsets, const FrameMap& frames) {
  Bag out;
  for (const auto& [synset, count] : synsets) {
    auto it = frames.close_match.find(synset);
    if (it == frames.close_match.end()) continue;
    for (const auto& frame : it->second) {
      out[frame] += count;
      for (const auto& anc : frames.ancestors(frame)) out[anc] += count;
    }
  }
  return out;
}

GroundedDocument ground(const VirtualDocument& vdoc, const Lexicon& lexicon,
                        const FrameMap& frames, WsdStrategy strategy) {
  GroundedDocument gd;
  gd.community_id = vdoc.community_id;
  gd.ontology_id = vdoc.ontology_id;
  gd.synsets = disambiguate(vdoc.terms, lexicon, strategy);
  gd.frames = evoke_frames(gd.synsets, frames);
  return gd;
}

}  // namespace concomp
