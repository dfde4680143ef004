#pragma once

#include "hypertree/distance_matrix.hpp"
#include "hypertree/tree.hpp"

namespace hypertree {

// Sum over unordered leaf pairs of |leaves below lca(i, j)| * d(i, j). Edge
// weights play no part. Leaves are matched to `d` by label.
double dasgupta_cost(const WeightedTree& t, const DistanceMatrix& d);

// (sum over unordered pairs |fit - input|^p)^(1/p), labels matched by name.
double lp_cost(const DistanceMatrix& fit, const DistanceMatrix& input, double p);

// Same on flat pair vectors.
double lp_norm(const Eigen::Ref<const Eigen::VectorXd>& residual, double p);

}  // namespace hypertree
