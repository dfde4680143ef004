#include "hypertree/costs.hpp"

#include "hypertree/errors.hpp"

#include <cmath>

namespace hypertree {

double dasgupta_cost(const WeightedTree& t, const DistanceMatrix& d) {
  if (!t.is_rooted()) throw ArgumentError("Dasgupta cost needs a rooted tree");
  const DistanceMatrix aligned = d.reordered(t.labels());
  const Eigen::MatrixXd clan = lca_clan_sizes(t);
  const std::size_t n = t.leaf_count();
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      cost += clan(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * aligned(i, j);
  return cost;
}

double lp_norm(const Eigen::Ref<const Eigen::VectorXd>& residual, double p) {
  if (!(p >= 1.0)) throw ArgumentError("lp cost needs p >= 1");
  if (p == 2.0) return residual.norm();
  if (p == 1.0) return residual.lpNorm<1>();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < residual.size(); ++k) sum += std::pow(std::abs(residual(k)), p);
  return std::pow(sum, 1.0 / p);
}

double lp_cost(const DistanceMatrix& fit, const DistanceMatrix& input, double p) {
  if (!(p >= 1.0)) throw ArgumentError("lp cost needs p >= 1");
  const DistanceMatrix aligned = fit.reordered(input.labels());
  return lp_norm(aligned.upper_triangle() - input.upper_triangle(), p);
}

}  // namespace hypertree
