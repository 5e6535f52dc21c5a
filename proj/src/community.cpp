#include "concomp/community.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

struct IndexGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Greedy modularity agglomeration over a plain index graph. Returns the
// community id per node, relabelled 0..k-1 in order of smallest member node.
std::vector<int> cnm_assign(const IndexGraph& g) {
  const int n = g.n;
  const double m = static_cast<double>(g.edges.size());
  if (g.edges.empty()) throw EmptyGraphError();

  std::vector<double> degree(n, 0.0);
  // between[i] maps neighbour community j -> edge count (community ids start
  // as node ids)
  std::vector<std::map<int, double>> between(n);
  for (auto [a, b] : g.edges) {
    degree[a] += 1.0;
    degree[b] += 1.0;
    between[a][b] += 1.0;
    between[b][a] += 1.0;
  }

  std::vector<bool> live(n, true);
  std::vector<double> a_frac(n);  // fraction of edge endpoints per community
  for (int i = 0; i < n; ++i) a_frac[i] = degree[i] / (2.0 * m);

  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;

  int remaining = n;
  while (remaining > 1) {
    double best = 0.0;
    int bi = -1, bj = -1;
    bool found = false;
    // scanning in (i, j) lexicographic order makes the first maximum the
    // tie-break winner
    for (int i = 0; i < n; ++i) {
      if (!live[i]) continue;
      for (const auto& [j, w] : between[i]) {
        if (j <= i) continue;
        double dq = w / m - 2.0 * a_frac[i] * a_frac[j];
        if (!found || dq > best) {
          best = dq;
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    // zero-gain merges are accepted; the tolerance absorbs rounding noise
    if (!found || best < -1e-12) break;

    // merge bj into bi (bi < bj keeps merged ids minimal)
    live[bj] = false;
    a_frac[bi] += a_frac[bj];
    for (const auto& [k, w] : between[bj]) {
      if (k == bi) continue;
      between[bi][k] += w;
      between[k][bi] += w;
      between[k].erase(bj);
    }
    between[bi].erase(bj);
    between[bj].clear();
    parent[bj] = bi;
    --remaining;
  }

  // resolve union chains, then compact ids by smallest node index
  std::vector<int> root(n);
  for (int i = 0; i < n; ++i) {
    int r = i;
    while (parent[r] != r) r = parent[r];
    root[i] = r;
  }
  std::map<int, int> relabel;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = relabel.try_emplace(root[i], static_cast<int>(relabel.size()));
    out[i] = it->second;
    (void)fresh;
  }
  return out;
}

double modularity_indexed(const IndexGraph& g, const std::vector<int>& assignment) {
  if (g.edges.empty()) throw EmptyGraphError();
  const double m = static_cast<double>(g.edges.size());
  int k = 0;
  for (int c : assignment) k = std::max(k, c + 1);
  std::vector<double> internal(k, 0.0), endpoints(k, 0.0);
  for (auto [a, b] : g.edges) {
    endpoints[assignment[a]] += 1.0;
    endpoints[assignment[b]] += 1.0;
    if (assignment[a] == assignment[b]) internal[assignment[a]] += 1.0;
  }
  double q = 0.0;
  for (int c = 0; c < k; ++c) {
    double e_cc = internal[c] / m;
    double a_c = endpoints[c] / (2.0 * m);
    q += e_cc - a_c * a_c;
  }
  return q;
}

struct NodeSet {
  std::vector<int> nodes;  // sorted graph indices
  int internal_edges = 0;
  double density = 0.0;
};

int count_internal(const std::vector<std::pair<int, int>>& edges, const std::set<int>& members) {
  int c = 0;
  for (auto [a, b] : edges)
    if (members.count(a) && members.count(b)) ++c;
  return c;
}

NodeSet make_set(const IntensionalGraph& g, std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  std::set<int> members(nodes.begin(), nodes.end());
  NodeSet s;
  s.internal_edges = count_internal(g.edges, members);
  s.density = community_density(nodes.size(), s.internal_edges);
  s.nodes = std::move(nodes);
  return s;
}

}  // namespace

double community_density(size_t node_count, size_t internal_edges) {
  if (node_count < 2) return 0.0;
  return 2.0 * static_cast<double>(internal_edges) /
         (static_cast<double>(node_count) * static_cast<double>(node_count - 1));
}

double modularity(const IntensionalGraph& g, const std::vector<int>& assignment) {
  IndexGraph ig{static_cast<int>(g.nodes.size()), g.edges};
  return modularity_indexed(ig, assignment);
}

Partition cnm_partition(const IntensionalGraph& g) {
  if (g.nodes.empty()) throw EmptyGraphError();
  IndexGraph ig{static_cast<int>(g.nodes.size()), g.edges};
  Partition p;
  p.graph_id = g.ontology_id;
  p.assignment = cnm_assign(ig);
  p.q = modularity_indexed(ig, p.assignment);
  return p;
}

std::vector<Community> refine(const IntensionalGraph& g, const Partition& p) {
  constexpr size_t kMinSplitSize = 4;

  std::map<int, std::vector<int>> by_comm;
  for (size_t i = 0; i < p.assignment.size(); ++i)
    by_comm[p.assignment[i]].push_back(static_cast<int>(i));

  std::vector<NodeSet> current;
  for (auto& [c, nodes] : by_comm) current.push_back(make_set(g, std::move(nodes)));

  bool changed = true;
  while (changed) {
    changed = false;
    double mean = 0.0;
    for (const auto& s : current) mean += s.density;
    mean /= static_cast<double>(current.size());

    std::vector<NodeSet> next;
    for (auto& s : current) {
      if (s.density >= mean || s.nodes.size() < kMinSplitSize || s.internal_edges == 0) {
        next.push_back(std::move(s));
        continue;
      }
      // induced subgraph, reusing local indices 0..|s|-1 (s.nodes is sorted,
      // so local order matches the global node ordering)
      std::map<int, int> local;
      for (size_t i = 0; i < s.nodes.size(); ++i) local[s.nodes[i]] = static_cast<int>(i);
      IndexGraph sub;
      sub.n = static_cast<int>(s.nodes.size());
      for (auto [a, b] : g.edges) {
        auto ia = local.find(a), ib = local.find(b);
        if (ia != local.end() && ib != local.end()) sub.edges.emplace_back(ia->second, ib->second);
      }
      std::vector<int> sub_assign = cnm_assign(sub);
      int parts = *std::max_element(sub_assign.begin(), sub_assign.end()) + 1;
      if (parts < 2) {
        next.push_back(std::move(s));
        continue;
      }
      std::map<int, std::vector<int>> children;
      for (size_t i = 0; i < sub_assign.size(); ++i)
        children[sub_assign[i]].push_back(s.nodes[i]);
      for (auto& [c, nodes] : children) next.push_back(make_set(g, std::move(nodes)));
      changed = true;
    }
    current = std::move(next);
  }

  std::sort(current.begin(), current.end(),
            [](const NodeSet& a, const NodeSet& b) { return a.nodes < b.nodes; });

  std::vector<Community> out;
  out.reserve(current.size());
  for (const auto& s : current) {
    Community c;
    c.ontology_id = g.ontology_id;
    for (int i : s.nodes) c.nodes.push_back(g.nodes[i]);
    c.internal_edges = s.internal_edges;
    c.density = s.density;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Community> detect_communities(const IntensionalGraph& g) {
  if (g.nodes.empty()) return {};
  auto communities = refine(g, cnm_partition(g));
  char buf[16];
  for (size_t i = 0; i < communities.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "c%03zu", i);
    communities[i].id = buf;
  }
  return communities;
}

nlohmann::json communities_to_json(const std::string& ontology_id,
                                   const std::vector<Community>& communities) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : communities) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : c.nodes) {
      if (auto* e = std::get_if<EntityNode>(&n)) {
        nodes.push_back({{"kind", "entity"}, {"iri", e->iri}});
      } else {
        const auto& ctx = std::get<ContextNode>(n);
        nodes.push_back({{"kind", "context"},
                         {"source", ctx.source},
                         {"property", ctx.property},
                         {"target", ctx.target}});
      }
    }
    arr.push_back({{"id", c.id},
                   {"nodes", nodes},
                   {"internalEdges", c.internal_edges},
                   {"density", c.density}});
  }
  return {{"ontologyId", ontology_id}, {"communities", arr}};
}

std::vector<Community> communities_from_json(const nlohmann::json& j) {
  std::vector<Community> out;
  std::string onto = j.at("ontologyId").get<std::string>();
  for (const auto& cj : j.at("communities")) {
    Community c;
    c.id = cj.at("id").get<std::string>();
    c.ontology_id = onto;
    for (const auto& n : cj.at("nodes")) {
      if (n.at("kind") == "entity") {
        c.nodes.push_back(EntityNode{n.at("iri").get<std::string>()});
      } else {
        c.nodes.push_back(ContextNode{n.at("source").get<std::string>(),
                                      n.at("property").get<std::string>(),
                                      n.at("target").get<std::string>()});
      }
    }
    c.internal_edges = cj.at("internalEdges").get<int>();
    c.density = cj.at("density").get<double>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace concomp
