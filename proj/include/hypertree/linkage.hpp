#pragma once

#include "hypertree/distance_matrix.hpp"
#include "hypertree/tree.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hypertree {

enum class LinkageMethod { single, complete, average, weighted };

// Accepts "single", "complete", "average" and "weighted"; anything else
// throws ArgumentError.
LinkageMethod parse_linkage_method(std::string_view name);
std::string to_string(LinkageMethod m);

// One agglomeration step. Cluster ids: leaves are 0..n-1, the cluster formed by
// merge k is n + k. a < b.
struct Merge {
  std::size_t a;
  std::size_t b;
  double height;
  std::size_t size;
};

struct Dendrogram {
  std::size_t n = 0;
  std::vector<Merge> merges;
  std::vector<std::string> labels;
};

// Agglomerative clustering with Lance-Williams updates. Each cluster lives in
// the slot of its smallest leaf index; among equal inter-cluster distances the
// lexicographically smallest slot pair merges first.
Dendrogram linkage(const DistanceMatrix& d, LinkageMethod method);

// Cophenetic matrix: entry (i, j) is the height of the merge joining i and j.
DistanceMatrix dendrogram_to_ultrametric(const Dendrogram& dend);

// Rooted tree with merge k at vertex n + k, placed at half its merge height
// above the leaves. Throws StructuralError on decreasing heights.
WeightedTree dendrogram_to_tree(const Dendrogram& dend);

}  // namespace hypertree
