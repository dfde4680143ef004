#pragma once

#include "hypertree/distance_matrix.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypertree {

using VertexId = std::size_t;

struct Edge {
  VertexId u;
  VertexId v;
  double weight;
};

struct Adjacent {
  VertexId vertex;
  std::size_t edge;
};

// Tree over vertices 0..vertex_count-1 with nonnegative edge weights. A subset
// of vertices carry labels ("leaves", though an internal vertex may be one);
// their order defines the row order of every matrix derived from the tree.
// The root is optional.
class WeightedTree {
 public:
  // Throws StructuralError unless the edges form a spanning tree with finite
  // nonnegative weights, and ArgumentError for bad leaf/label/root data.
  WeightedTree(std::size_t vertex_count, std::vector<Edge> edges, std::vector<VertexId> leaves,
               std::vector<std::string> labels, std::optional<VertexId> root = std::nullopt);

  static WeightedTree single_vertex(std::string label);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t leaf_count() const { return leaves_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& leaves() const { return leaves_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::optional<VertexId>& root() const { return root_; }
  bool is_rooted() const { return root_.has_value(); }

  std::span<const Adjacent> neighbors(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }

  // Position of v in leaves(), if v is a leaf.
  std::optional<std::size_t> leaf_position(VertexId v) const;

  std::vector<double> weights() const;
  WeightedTree with_weights(const std::vector<double>& weights) const;
  WeightedTree with_unit_weights() const;
  WeightedTree with_root(std::optional<VertexId> root) const;

  // Same tree with leaves listed in the order of `labels`. Throws
  // ArgumentError if the label sets differ.
  WeightedTree with_leaf_order(const std::vector<std::string>& labels) const;

 private:
  std::vector<Edge> edges_;
  std::vector<VertexId> leaves_;
  std::vector<std::string> labels_;
  std::optional<VertexId> root_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

// Parent pointers of a tree hung from `root`.
struct RootedStructure {
  VertexId root;
  std::vector<std::optional<VertexId>> parent;
  std::vector<std::size_t> parent_edge;  // meaningless for the root
  std::vector<std::size_t> depth;        // edge count from the root
  std::vector<VertexId> preorder;
};

RootedStructure rooted_structure(const WeightedTree& t, VertexId root);

// Path distances between all leaf pairs, labeled by the tree's leaves.
DistanceMatrix leaf_distance_matrix(const WeightedTree& t);

// Lowest common ancestor of two vertices in a rooted tree.
VertexId lca(const WeightedTree& t, VertexId a, VertexId b);

// Entry (i, j) = number of leaves below lca(leaf i, leaf j); zero diagonal.
Eigen::MatrixXd lca_clan_sizes(const WeightedTree& t);

// Path-incidence matrix: one row per unordered leaf pair (pair_index order),
// one column per edge (edges() order).
struct DesignMatrix {
  Eigen::MatrixXd incidence;
};

DesignMatrix design_matrix(const WeightedTree& t);

// Replaces a degree-2 root and its two edges by a single edge.
WeightedTree trim_root(const WeightedTree& t);

// Roots the tree at the midpoint of its longest leaf-to-leaf path.
WeightedTree midpoint_root(const WeightedTree& t);

// 2/(n(n-1)) * || d_T1 - d_T2 ||_2 over leaf pairs with all edges of unit
// length. Leaves are matched by label.
double tree_distance(const WeightedTree& t1, const WeightedTree& t2);

}  // namespace hypertree
