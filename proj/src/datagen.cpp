#include "hypertree/datagen.hpp"

#include "hypertree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <utility>

namespace hypertree {

WeightedTree random_binary_tree(std::size_t n, std::uint64_t seed, bool rooted) {
  if (n < 2) throw ArgumentError("random binary tree needs at least two leaves");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Topology first: endpoints only. Vertex 0..n-1 are leaves, the optional
  // stem leaf is vertex n, internal vertices follow.
  const std::size_t total_leaves = rooted ? n + 1 : n;
  std::vector<std::pair<VertexId, VertexId>> links{{0, 1}};
  VertexId next_internal = total_leaves;
  for (VertexId leaf = 2; leaf < total_leaves; ++leaf) {
    std::uniform_int_distribution<std::size_t> pick(0, links.size() - 1);
    const std::size_t e = pick(rng);
    const auto [u, v] = links[e];
    const VertexId mid = next_internal++;
    links[e] = {u, mid};
    links.push_back({mid, v});
    links.push_back({mid, leaf});
  }

  std::vector<Edge> edges;
  std::optional<VertexId> root;
  if (rooted) {
    // Drop the stem leaf and its edge; its neighbor becomes the root.
    const VertexId stem = n;
    for (const auto& [u, v] : links) {
      if (u == stem || v == stem) {
        root = u == stem ? v : u;
        continue;
      }
      edges.push_back({u > stem ? u - 1 : u, v > stem ? v - 1 : v, 0.0});
    }
    if (*root > stem) --*root;
  } else {
    for (const auto& [u, v] : links) edges.push_back({u, v, 0.0});
  }
  for (Edge& e : edges) e.weight = unif(rng);

  const std::size_t vertex_count = edges.size() + 1;
  std::vector<VertexId> leaves(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    leaves[i] = i;
    labels[i] = "L" + std::to_string(i);
  }
  return WeightedTree(vertex_count, std::move(edges), std::move(leaves), std::move(labels), root);
}

std::size_t NoisyGraph::noise_edge_count() const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const GraphEdge& e) { return e.noise; }));
}

WeightLaw uniform_weight_law() {
  return [](std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
}

std::size_t noise_edge_target(std::size_t leaf_count, double ratio) {
  if (!(ratio >= 0.0)) throw ArgumentError("noise ratio must be nonnegative");
  if (leaf_count < 1) return 0;
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(2 * leaf_count - 2) + 0.5));
}

NoisyGraph add_noise_edges(const WeightedTree& t, double ratio, std::uint64_t seed, const WeightLaw& law) {
  const std::size_t wanted = noise_edge_target(t.leaf_count(), ratio);
  const std::size_t nv = t.vertex_count();
  NoisyGraph g{nv, {}, t.leaves(), t.labels()};
  std::set<std::pair<VertexId, VertexId>> present;
  for (const Edge& e : t.edges()) {
    g.edges.push_back({e.u, e.v, e.weight, false});
    present.insert(std::minmax(e.u, e.v));
  }
  const std::size_t possible = nv * (nv - 1) / 2;
  if (wanted > possible - present.size()) {
    throw StructuralError("cannot add " + std::to_string(wanted) + " noise edges: only " +
                          std::to_string(possible - present.size()) + " vertex pairs are free");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, nv - 1);
  for (std::size_t added = 0; added < wanted;) {
    const VertexId u = pick(rng);
    const VertexId v = pick(rng);
    if (u == v) continue;
    if (!present.insert(std::minmax(u, v)).second) continue;
    g.edges.push_back({std::min(u, v), std::max(u, v), law(rng), true});
    ++added;
  }
  return g;
}

DistanceMatrix graph_leaf_shortest_paths(const NoisyGraph& g) {
  std::vector<std::vector<std::pair<VertexId, double>>> adj(g.vertex_count);
  for (const GraphEdge& e : g.edges) {
    if (e.u >= g.vertex_count || e.v >= g.vertex_count) throw StructuralError("graph edge out of range");
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  const std::size_t n = g.leaves.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  using Item = std::pair<double, VertexId>;
  std::vector<double> dist(g.vertex_count);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[g.leaves[i]] = 0.0;
    queue.emplace(0.0, g.leaves[i]);
    while (!queue.empty()) {
      const auto [du, u] = queue.top();
      queue.pop();
      if (du > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < dist[v]) {
          dist[v] = du + w;
          queue.emplace(dist[v], v);
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double dj = dist[g.leaves[j]];
      if (!std::isfinite(dj)) throw StructuralError("graph is disconnected: leaf '" + g.labels[j] + "' unreachable");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dj;
    }
  }
  // Dijkstra from either end yields the same sums up to rounding; keep the
  // matrix exactly symmetric.
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = i + 1; j < out.cols(); ++j) out(j, i) = out(i, j);
  return DistanceMatrix(g.labels, std::move(out));
}

DistanceMatrix dasgupta_measurements(const WeightedTree& t) {
  if (!t.is_rooted()) throw ArgumentError("Dasgupta measurements need a rooted tree");
  return DistanceMatrix(t.labels(), lca_clan_sizes(t));
}

DistanceMatrix cosine_dissimilarity(const FeatureTable& f) {
  const Eigen::Index n = f.features.rows();
  if (static_cast<Eigen::Index>(f.labels.size()) != n) throw ArgumentError("feature table label count mismatch");
  Eigen::VectorXd sq(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sq(i) = f.features.row(i).squaredNorm();
    if (sq(i) == 0.0) {
      throw ParseError("feature row '" + f.labels[static_cast<std::size_t>(i)] +
                       "' is all zeros; cosine similarity is undefined");
    }
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double cosine = f.features.row(i).dot(f.features.row(j)) / std::sqrt(sq(i) * sq(j));
      out(i, j) = out(j, i) = std::clamp(1.0 - cosine, 0.0, 2.0);
    }
  return DistanceMatrix(f.labels, std::move(out));
}

}  // namespace hypertree
