#pragma once

#include "hypertree/distance_matrix.hpp"
#include "hypertree/tree.hpp"

namespace hypertree {

// Nonnegative edge weights on a fixed topology minimizing || A_T w - d ||_p.
// p = 2 is solved exactly as nonnegative least squares; other p >= 1 use
// iteratively reweighted least squares seeded by the p = 2 solution.
// Leaves are matched to `d` by label; input weights are ignored.
WeightedTree fit_edge_weights(const WeightedTree& topology, const DistanceMatrix& d, double p = 2.0);

}  // namespace hypertree
