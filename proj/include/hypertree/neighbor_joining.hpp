#pragma once

#include "hypertree/distance_matrix.hpp"
#include "hypertree/tree.hpp"

#include <cstddef>

namespace hypertree {

struct NeighborJoiningResult {
  WeightedTree tree;
  // Edges whose computed length was negative and got replaced by 0.
  std::size_t clamped_edges = 0;
};

// Classical O(n^3) Neighbor Joining. Ties in the Q criterion go to the
// lexicographically smallest active (i, j). The result is unrooted; leaves
// keep the matrix's label order and vertex ids 0..n-1.
NeighborJoiningResult neighbor_joining(const DistanceMatrix& d);

}  // namespace hypertree
