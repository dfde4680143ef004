#include "hypertree/tree.hpp"

#include "hypertree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace hypertree {

WeightedTree::WeightedTree(std::size_t vertex_count, std::vector<Edge> edges,
                           std::vector<VertexId> leaves, std::vector<std::string> labels,
                           std::optional<VertexId> root)
    : edges_(std::move(edges)),
      leaves_(std::move(leaves)),
      labels_(std::move(labels)),
      root_(root),
      adjacency_(vertex_count) {
  if (vertex_count == 0) throw StructuralError("tree must have at least one vertex");
  if (edges_.size() != vertex_count - 1) {
    throw StructuralError("tree with " + std::to_string(vertex_count) + " vertices needs " +
                          std::to_string(vertex_count - 1) + " edges, got " +
                          std::to_string(edges_.size()));
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u >= vertex_count || ed.v >= vertex_count || ed.u == ed.v) {
      throw StructuralError("edge " + std::to_string(e) + " has invalid endpoints");
    }
    if (!std::isfinite(ed.weight) || ed.weight < 0.0) {
      throw StructuralError("edge " + std::to_string(e) + " has a negative or non-finite weight");
    }
    adjacency_[ed.u].push_back({ed.v, e});
    adjacency_[ed.v].push_back({ed.u, e});
  }
  // |E| = |V| - 1 plus connectivity implies acyclic.
  std::vector<char> seen(vertex_count, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Adjacent& a : adjacency_[v]) {
      if (!seen[a.vertex]) {
        seen[a.vertex] = 1;
        ++reached;
        stack.push_back(a.vertex);
      }
    }
  }
  if (reached != vertex_count) throw StructuralError("tree is disconnected");

  if (labels_.size() != leaves_.size()) throw ArgumentError("leaf and label counts differ");
  std::unordered_set<VertexId> leaf_set;
  std::unordered_set<std::string> label_set;
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    const VertexId v = leaves_[i];
    if (v >= vertex_count) throw ArgumentError("leaf vertex out of range");
    if (!leaf_set.insert(v).second) throw ArgumentError("leaf vertex listed twice");
    if (!label_set.insert(labels_[i]).second) throw ArgumentError("duplicate leaf label '" + labels_[i] + "'");
  }
  if (root_ && *root_ >= vertex_count) throw ArgumentError("root vertex out of range");
}

WeightedTree WeightedTree::single_vertex(std::string label) {
  return WeightedTree(1, {}, {0}, {std::move(label)});
}

std::optional<std::size_t> WeightedTree::leaf_position(VertexId v) const {
  for (std::size_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i] == v) return i;
  return std::nullopt;
}

std::vector<double> WeightedTree::weights() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const Edge& e : edges_) w.push_back(e.weight);
  return w;
}

WeightedTree WeightedTree::with_weights(const std::vector<double>& weights) const {
  if (weights.size() != edges_.size()) throw ArgumentError("weight count does not match edge count");
  std::vector<Edge> edges = edges_;
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].weight = weights[e];
  return WeightedTree(vertex_count(), std::move(edges), leaves_, labels_, root_);
}

WeightedTree WeightedTree::with_unit_weights() const {
  return with_weights(std::vector<double>(edges_.size(), 1.0));
}

WeightedTree WeightedTree::with_root(std::optional<VertexId> root) const {
  return WeightedTree(vertex_count(), edges_, leaves_, labels_, root);
}

WeightedTree WeightedTree::with_leaf_order(const std::vector<std::string>& labels) const {
  if (labels.size() != labels_.size()) {
    throw ArgumentError("leaf label sets differ in size (" + std::to_string(labels.size()) +
                        " vs " + std::to_string(labels_.size()) + ")");
  }
  std::unordered_map<std::string, VertexId> by_label;
  for (std::size_t i = 0; i < labels_.size(); ++i) by_label.emplace(labels_[i], leaves_[i]);
  std::vector<VertexId> leaves;
  leaves.reserve(labels.size());
  for (const auto& l : labels) {
    auto it = by_label.find(l);
    if (it == by_label.end()) throw ArgumentError("leaf label '" + l + "' not present in tree");
    leaves.push_back(it->second);
  }
  return WeightedTree(vertex_count(), edges_, std::move(leaves), labels, root_);
}

RootedStructure rooted_structure(const WeightedTree& t, VertexId root) {
  const std::size_t nv = t.vertex_count();
  if (root >= nv) throw ArgumentError("root vertex out of range");
  RootedStructure rs{root, std::vector<std::optional<VertexId>>(nv),
                     std::vector<std::size_t>(nv, 0), std::vector<std::size_t>(nv, 0), {}};
  rs.preorder.reserve(nv);
  std::vector<VertexId> stack{root};
  std::vector<char> seen(nv, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    rs.preorder.push_back(v);
    const auto nbrs = t.neighbors(v);
    for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
      if (seen[it->vertex]) continue;
      seen[it->vertex] = 1;
      rs.parent[it->vertex] = v;
      rs.parent_edge[it->vertex] = it->edge;
      rs.depth[it->vertex] = rs.depth[v] + 1;
      stack.push_back(it->vertex);
    }
  }
  return rs;
}

namespace {

// Weighted distances from `source` to every vertex.
std::vector<double> distances_from(const WeightedTree& t, VertexId source) {
  std::vector<double> dist(t.vertex_count(), -1.0);
  std::vector<VertexId> stack{source};
  dist[source] = 0.0;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Adjacent& a : t.neighbors(v)) {
      if (dist[a.vertex] >= 0.0) continue;
      dist[a.vertex] = dist[v] + t.edges()[a.edge].weight;
      stack.push_back(a.vertex);
    }
  }
  return dist;
}

VertexId require_root(const WeightedTree& t) {
  if (!t.root()) throw ArgumentError("operation requires a rooted tree");
  return *t.root();
}

}  // namespace

DistanceMatrix leaf_distance_matrix(const WeightedTree& t) {
  const std::size_t n = t.leaf_count();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto dist = distances_from(t, t.leaves()[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      d(ii, jj) = d(jj, ii) = dist[t.leaves()[j]];
    }
  }
  return DistanceMatrix(t.labels(), std::move(d));
}

VertexId lca(const WeightedTree& t, VertexId a, VertexId b) {
  const VertexId root = require_root(t);
  if (a >= t.vertex_count() || b >= t.vertex_count()) throw ArgumentError("unknown vertex");
  const RootedStructure rs = rooted_structure(t, root);
  while (rs.depth[a] > rs.depth[b]) a = *rs.parent[a];
  while (rs.depth[b] > rs.depth[a]) b = *rs.parent[b];
  while (a != b) {
    a = *rs.parent[a];
    b = *rs.parent[b];
  }
  return a;
}

Eigen::MatrixXd lca_clan_sizes(const WeightedTree& t) {
  const VertexId root = require_root(t);
  const RootedStructure rs = rooted_structure(t, root);
  const std::size_t n = t.leaf_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  std::vector<std::vector<std::size_t>> below(t.vertex_count());
  std::vector<std::optional<std::size_t>> position(t.vertex_count());
  for (std::size_t i = 0; i < n; ++i) position[t.leaves()[i]] = i;

  for (auto it = rs.preorder.rbegin(); it != rs.preorder.rend(); ++it) {
    const VertexId v = *it;
    std::vector<const std::vector<std::size_t>*> groups;
    std::vector<std::size_t> self;
    if (position[v]) {
      self.push_back(*position[v]);
      groups.push_back(&self);
    }
    for (const Adjacent& a : t.neighbors(v))
      if (rs.parent[a.vertex] == v) groups.push_back(&below[a.vertex]);
    std::size_t clan = 0;
    for (const auto* g : groups) clan += g->size();
    for (std::size_t g1 = 0; g1 < groups.size(); ++g1)
      for (std::size_t g2 = g1 + 1; g2 < groups.size(); ++g2)
        for (std::size_t i : *groups[g1])
          for (std::size_t j : *groups[g2]) {
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            m(ii, jj) = m(jj, ii) = static_cast<double>(clan);
          }
    auto& mine = below[v];
    mine.reserve(clan);
    for (const auto* g : groups) mine.insert(mine.end(), g->begin(), g->end());
    for (const Adjacent& a : t.neighbors(v))
      if (rs.parent[a.vertex] == v) std::vector<std::size_t>().swap(below[a.vertex]);
  }
  return m;
}

DesignMatrix design_matrix(const WeightedTree& t) {
  const std::size_t n = t.leaf_count();
  DesignMatrix dm{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pair_count(n)),
                                        static_cast<Eigen::Index>(t.edges().size()))};
  for (std::size_t i = 0; i < n; ++i) {
    const RootedStructure rs = rooted_structure(t, t.leaves()[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto row = static_cast<Eigen::Index>(pair_index(i, j, n));
      for (VertexId v = t.leaves()[j]; rs.parent[v]; v = *rs.parent[v]) {
        dm.incidence(row, static_cast<Eigen::Index>(rs.parent_edge[v])) = 1.0;
      }
    }
  }
  return dm;
}

WeightedTree trim_root(const WeightedTree& t) {
  const VertexId root = require_root(t);
  if (t.degree(root) != 2) {
    throw ArgumentError("root trimming needs a degree-2 root, found degree " +
                        std::to_string(t.degree(root)));
  }
  if (t.leaf_position(root)) throw ArgumentError("cannot trim a labeled root");
  const Adjacent a = t.neighbors(root)[0];
  const Adjacent b = t.neighbors(root)[1];
  auto renumber = [root](VertexId v) { return v > root ? v - 1 : v; };

  std::vector<Edge> edges;
  edges.reserve(t.edges().size() - 1);
  const std::size_t merged_slot = std::min(a.edge, b.edge);
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    if (e == merged_slot) {
      edges.push_back({renumber(a.vertex), renumber(b.vertex),
                       t.edges()[a.edge].weight + t.edges()[b.edge].weight});
    } else if (e != a.edge && e != b.edge) {
      const Edge& ed = t.edges()[e];
      edges.push_back({renumber(ed.u), renumber(ed.v), ed.weight});
    }
  }
  std::vector<VertexId> leaves;
  for (VertexId v : t.leaves()) leaves.push_back(renumber(v));
  return WeightedTree(t.vertex_count() - 1, std::move(edges), std::move(leaves), t.labels());
}

WeightedTree midpoint_root(const WeightedTree& input) {
  WeightedTree t = input;
  if (t.root()) {
    const bool trimmable = t.degree(*t.root()) == 2 && !t.leaf_position(*t.root());
    t = trimmable ? trim_root(t) : t.with_root(std::nullopt);
  }
  const std::size_t n = t.leaf_count();
  if (n < 2) throw ArgumentError("midpoint rooting needs at least two leaves");

  const DistanceMatrix d = leaf_distance_matrix(t);
  std::size_t best_a = 0, best_b = 1;
  double best = -1.0;
  auto ordered = [&](std::size_t i, std::size_t j) {
    const auto& li = t.labels()[i];
    const auto& lj = t.labels()[j];
    return li < lj ? std::pair{li, lj} : std::pair{lj, li};
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) > best || (d(i, j) == best && ordered(i, j) < ordered(best_a, best_b))) {
        best = d(i, j);
        best_a = i;
        best_b = j;
      }
    }
  if (t.labels()[best_b] < t.labels()[best_a]) std::swap(best_a, best_b);

  // Walk from leaf a towards leaf b.
  const VertexId a = t.leaves()[best_a];
  const VertexId b = t.leaves()[best_b];
  const RootedStructure from_b = rooted_structure(t, b);
  const double half = best / 2.0;
  double travelled = 0.0;
  VertexId v = a;
  while (v != b) {
    const std::size_t e = from_b.parent_edge[v];
    const VertexId next = *from_b.parent[v];
    const double w = t.edges()[e].weight;
    const bool internal = t.degree(v) > 1;
    if (travelled == half && internal) return t.with_root(v);
    if (travelled + w > half || (travelled + w == half && t.degree(next) <= 1)) {
      std::vector<Edge> edges = t.edges();
      const VertexId r = t.vertex_count();
      const double near = std::max(0.0, half - travelled);
      edges[e] = {v, r, near};
      edges.push_back({r, next, std::max(0.0, w - near)});
      return WeightedTree(t.vertex_count() + 1, std::move(edges), t.leaves(), t.labels(), r);
    }
    travelled += w;
    v = next;
  }
  // Unreachable for n >= 2: the loop always finds the midpoint edge.
  throw StructuralError("midpoint rooting failed to locate the midpoint");
}

double tree_distance(const WeightedTree& t1, const WeightedTree& t2) {
  const WeightedTree aligned = t2.with_leaf_order(t1.labels());
  const std::size_t n = t1.leaf_count();
  if (n < 2) return 0.0;
  const Eigen::VectorXd d1 = leaf_distance_matrix(t1.with_unit_weights()).upper_triangle();
  const Eigen::VectorXd d2 = leaf_distance_matrix(aligned.with_unit_weights()).upper_triangle();
  return 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1)) * (d1 - d2).norm();
}

}  // namespace hypertree
