#pragma once

#include "hypertree/distance_matrix.hpp"
#include "hypertree/tree.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace hypertree {

// Random binary tree on n leaves labeled L0..L{n-1}. Each new leaf subdivides
// a uniformly chosen existing edge; weights are i.i.d. Unif[0, 1]. The unrooted
// form has 2n - 3 edges. The rooted form has a degree-2 root and 2n - 2 edges,
// obtained by growing an extra stem leaf and deleting it at the end.
WeightedTree random_binary_tree(std::size_t n, std::uint64_t seed, bool rooted = false);

struct GraphEdge {
  VertexId u;
  VertexId v;
  double weight;
  bool noise;  // false for original tree edges
};

// A tree plus extra random edges between arbitrary vertex pairs.
struct NoisyGraph {
  std::size_t vertex_count = 0;
  std::vector<GraphEdge> edges;
  std::vector<VertexId> leaves;
  std::vector<std::string> labels;

  std::size_t noise_edge_count() const;
};

// Draws a noise edge weight.
using WeightLaw = std::function<double(std::mt19937_64&)>;
WeightLaw uniform_weight_law();

// round_half_up(R * (2n - 2)) for n leaves.
std::size_t noise_edge_target(std::size_t leaf_count, double ratio);

// Adds noise_edge_target(n, ratio) edges between distinct, not yet adjacent
// vertex pairs drawn uniformly (leaves and internal vertices alike).
NoisyGraph add_noise_edges(const WeightedTree& t, double ratio, std::uint64_t seed,
                           const WeightLaw& law = uniform_weight_law());

// Leaf-to-leaf shortest path lengths (Dijkstra from every leaf).
DistanceMatrix graph_leaf_shortest_paths(const NoisyGraph& g);

// Entry (i, j) = leaves below lca(i, j) in a rooted tree.
DistanceMatrix dasgupta_measurements(const WeightedTree& t);

struct FeatureTable {
  std::vector<std::string> labels;
  std::vector<std::string> feature_names;
  Eigen::MatrixXd features;  // one row per entity
};

// 1 - cosine similarity, clipped to [0, 2]. Throws ParseError naming the first
// all-zero row.
DistanceMatrix cosine_dissimilarity(const FeatureTable& f);

}  // namespace hypertree
