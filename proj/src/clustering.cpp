#include "concomp/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double wcss_of(const std::vector<std::vector<double>>& points, const std::vector<int>& assignment,
               const std::vector<std::vector<double>>& centroids) {
  double s = 0.0;
  for (size_t i = 0; i < points.size(); ++i) s += sq_dist(points[i], centroids[assignment[i]]);
  return s;
}

}  // namespace

Vectorized vectorize(const std::vector<GroundedDocument>& docs) {
  std::set<std::string> vocab;
  for (const auto& d : docs) {
    for (const auto& [s, c] : d.synsets) vocab.insert("s:" + s);
    for (const auto& [f, c] : d.frames) vocab.insert("f:" + f);
  }
  Vectorized out;
  out.vocabulary.assign(vocab.begin(), vocab.end());
  std::map<std::string, int> index;
  for (size_t i = 0; i < out.vocabulary.size(); ++i)
    index[out.vocabulary[i]] = static_cast<int>(i);

  for (const auto& d : docs) {
    DocVector v;
    v.key = d.ontology_id + "/" + d.community_id;
    v.values.assign(out.vocabulary.size(), 0.0);
    for (const auto& [s, c] : d.synsets) v.values[index["s:" + s]] = static_cast<double>(c);
    for (const auto& [f, c] : d.frames) v.values[index["f:" + f]] = static_cast<double>(c);
    double norm = 0.0;
    for (double x : v.values) norm += x * x;
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (double& x : v.values) x /= norm;
    } else {
      v.empty = true;
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

KMeansRun kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed) {
  const int n = static_cast<int>(points.size());
  if (k < 1 || k > n) throw InvalidKError("k must be in [1, " + std::to_string(n) + "]");

  // farthest-point initialization from a seed-determined first center
  std::vector<int> centers{static_cast<int>(seed % static_cast<std::uint64_t>(n))};
  std::vector<double> nearest(n, std::numeric_limits<double>::max());
  while (static_cast<int>(centers.size()) < k) {
    for (int i = 0; i < n; ++i)
      nearest[i] = std::min(nearest[i], sq_dist(points[i], points[centers.back()]));
    int far = 0;
    for (int i = 1; i < n; ++i)
      if (nearest[i] > nearest[far]) far = i;
    centers.push_back(far);
  }
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  for (int c : centers) centroids.push_back(points[c]);

  KMeansRun run;
  run.assignment.assign(n, -1);
  const size_t dim = points.empty() ? 0 : points[0].size();

  for (int iter = 0; iter < 300; ++iter) {
    // assignment step; nearest centroid, smallest index on ties
    std::vector<int> assign(n);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(points[i], centroids[0]);
      for (int c = 1; c < k; ++c) {
        double d = sq_dist(points[i], centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assign[i] = best;
    }

    // repair empty clusters with the point farthest from its own centroid
    while (true) {
      std::vector<int> size(k, 0);
      for (int a : assign) ++size[a];
      int empty = -1;
      for (int c = 0; c < k; ++c)
        if (size[c] == 0) {
          empty = c;
          break;
        }
      if (empty < 0) break;
      int steal = -1;
      double worst = -1.0;
      for (int i = 0; i < n; ++i) {
        if (size[assign[i]] < 2) continue;
        double d = sq_dist(points[i], centroids[assign[i]]);
        if (d > worst) {
          worst = d;
          steal = i;
        }
      }
      assign[steal] = empty;
      centroids[empty] = points[steal];
    }

    bool stable = assign == run.assignment;
    run.assignment = std::move(assign);

    // update step: centroid = mean of assigned points
    std::vector<std::vector<double>> next(k, std::vector<double>(dim, 0.0));
    std::vector<int> size(k, 0);
    for (int i = 0; i < n; ++i) {
      ++size[run.assignment[i]];
      for (size_t d = 0; d < dim; ++d) next[run.assignment[i]][d] += points[i][d];
    }
    for (int c = 0; c < k; ++c)
      for (size_t d = 0; d < dim; ++d) next[c][d] /= static_cast<double>(size[c]);
    centroids = std::move(next);

    run.iterations = iter + 1;
    run.wcss_trace.push_back(wcss_of(points, run.assignment, centroids));
    if (stable) break;
  }

  run.centroids = std::move(centroids);
  run.wcss = run.wcss_trace.back();
  return run;
}

int elbow_select(const std::map<int, double>& wcss_curve) {
  if (wcss_curve.size() < 3) throw CurveTooShortError();
  int best_k = -1;
  double best = -std::numeric_limits<double>::max();
  for (const auto& [k, w] : wcss_curve) {
    auto prev = wcss_curve.find(k - 1);
    auto next = wcss_curve.find(k + 1);
    if (prev == wcss_curve.end() || next == wcss_curve.end()) continue;
    double d2 = prev->second - 2.0 * w + next->second;
    if (best_k < 0 || d2 > best) {  // map order ascending: first max wins ties
      best = d2;
      best_k = k;
    }
  }
  if (best_k < 0) throw CurveTooShortError();
  return best_k;
}

ClusteringResult cluster_corpus(const std::vector<GroundedDocument>& docs, int k_max,
                                std::uint64_t seed) {
  Vectorized vec = vectorize(docs);
  std::vector<std::vector<double>> points;
  std::vector<std::string> keys;
  for (const auto& v : vec.vectors) {
    if (v.empty) continue;
    points.push_back(v.values);
    keys.push_back(v.key);
  }
  const int n = static_cast<int>(points.size());
  if (n < 3) throw TooFewDocumentsError("clustering needs at least 3 non-empty documents, got " +
                                        std::to_string(n));

  int upper = std::min(k_max, n - 1);
  if (upper < 1) upper = 1;

  std::map<int, double> curve;
  std::map<int, KMeansRun> best_runs;
  for (int k = 1; k <= upper; ++k) {
    KMeansRun best;
    bool have = false;
    for (std::uint64_t r = 0; r < 5; ++r) {
      KMeansRun run = kmeans(points, k, seed + r);
      if (!have || run.wcss < best.wcss) {
        best = std::move(run);
        have = true;
      }
    }
    curve[k] = best.wcss;
    best_runs[k] = std::move(best);
  }

  int k = curve.size() >= 3 ? elbow_select(curve) : static_cast<int>(curve.size());

  ClusteringResult result;
  result.k = k;
  result.centroids = best_runs[k].centroids;
  result.wcss_curve = curve;
  for (int i = 0; i < n; ++i) result.assignment[keys[i]] = best_runs[k].assignment[i];
  return result;
}

nlohmann::json clustering_to_json(const ClusteringResult& r) {
  nlohmann::json curve = nlohmann::json::object();
  for (const auto& [k, w] : r.wcss_curve) curve[std::to_string(k)] = w;
  return {{"k", r.k},
          {"assignment", r.assignment},
          {"centroids", r.centroids},
          {"wcssCurve", curve}};
}

ClusteringResult clustering_from_json(const nlohmann::json& j) {
  ClusteringResult r;
  r.k = j.at("k").get<int>();
  r.assignment = j.at("assignment").get<std::map<std::string, int>>();
  r.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
  for (const auto& [k, w] : j.at("wcssCurve").items()) r.wcss_curve[std::stoi(k)] = w.get<double>();
  return r;
}

}  // namespace concomp
