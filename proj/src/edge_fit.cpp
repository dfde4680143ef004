#include "hypertree/edge_fit.hpp"

#include "hypertree/costs.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/nnls.hpp"

#include <algorithm>
#include <cmath>

namespace hypertree {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

WeightedTree fit_edge_weights(const WeightedTree& topology, const DistanceMatrix& d, double p) {
  if (!(p >= 1.0)) throw ArgumentError("edge fitting needs p >= 1");
  const DistanceMatrix target = d.reordered(topology.labels());
  const Eigen::MatrixXd a = design_matrix(topology).incidence;
  const Eigen::VectorXd b = target.upper_triangle();

  Eigen::VectorXd w = solve_nnls(a, b).x;
  if (p != 2.0) {
    // Iteratively reweighted NNLS; each step minimizes a quadratic majorizer.
    double best_cost = lp_norm(a * w - b, p);
    Eigen::VectorXd best = w;
    for (int it = 0; it < 200; ++it) {
      const Eigen::VectorXd r = a * w - b;
      const double floor = 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff());
      Eigen::VectorXd sqrt_weight(r.size());
      for (Eigen::Index k = 0; k < r.size(); ++k)
        sqrt_weight(k) = std::pow(std::max(std::abs(r(k)), floor), (p - 2.0) / 2.0);
      w = solve_nnls(sqrt_weight.asDiagonal() * a, sqrt_weight.asDiagonal() * b).x;
      const double cost = lp_norm(a * w - b, p);
      const bool stalled = cost > best_cost * (1.0 - 1e-12);
      if (cost < best_cost) {
        best_cost = cost;
        best = w;
      }
      if (stalled) break;
    }
    w = best;
  }

  const Eigen::VectorXd given = Eigen::Map<const Eigen::VectorXd>(
      topology.weights().data(), static_cast<Eigen::Index>(topology.edges().size()));
  if (lp_norm(a * given - b, p) < lp_norm(a * w - b, p)) return topology;
  return topology.with_weights(to_std(w));
}

}  // namespace hypertree
