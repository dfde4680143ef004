#include "hypertree/neighbor_joining.hpp"

#include "hypertree/errors.hpp"

#include <limits>
#include <numeric>
#include <vector>

namespace hypertree {

NeighborJoiningResult neighbor_joining(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n == 0) throw ArgumentError("Neighbor Joining needs at least one entity");
  if (n == 1) return {WeightedTree::single_vertex(d.labels()[0]), 0};

  std::vector<VertexId> leaves(n);
  std::iota(leaves.begin(), leaves.end(), VertexId{0});
  std::vector<Edge> edges;
  edges.reserve(2 * n - 3);
  std::size_t clamped = 0;
  auto add_edge = [&](VertexId u, VertexId v, double w) {
    if (w < 0.0) {
      w = 0.0;
      ++clamped;
    }
    edges.push_back({u, v, w});
  };

  // Working matrix over active clusters; slot k holds tree vertex node[k].
  Eigen::MatrixXd m = d.values();
  std::vector<VertexId> node(n);
  std::iota(node.begin(), node.end(), VertexId{0});
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<double> row_sum(n, 0.0);
  VertexId next_vertex = n;

  while (active.size() > 2) {
    const std::size_t size = active.size();
    for (std::size_t a : active) {
      double s = 0.0;
      for (std::size_t b : active) s += m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      row_sum[a] = s;
    }
    const double scale = static_cast<double>(size - 2);
    std::size_t best_i = 0, best_j = 1;
    double best_q = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = x + 1; y < size; ++y) {
        const std::size_t a = active[x], b = active[y];
        const double q = scale * m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - row_sum[a] - row_sum[b];
        if (q < best_q) {
          best_q = q;
          best_i = x;
          best_j = y;
        }
      }
    }
    const std::size_t a = active[best_i], b = active[best_j];
    const auto ai = static_cast<Eigen::Index>(a), bi = static_cast<Eigen::Index>(b);
    const double dab = m(ai, bi);
    const double skew = (row_sum[a] - row_sum[b]) / (2.0 * scale);
    const VertexId u = next_vertex++;
    add_edge(node[a], u, 0.5 * dab + skew);
    add_edge(node[b], u, 0.5 * dab - skew);

    // The joined cluster takes slot a.
    for (std::size_t k : active) {
      if (k == a || k == b) continue;
      const auto ki = static_cast<Eigen::Index>(k);
      m(ai, ki) = m(ki, ai) = 0.5 * (m(ai, ki) + m(bi, ki) - dab);
    }
    m(ai, ai) = 0.0;
    node[a] = u;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_j));
  }
  add_edge(node[active[0]], node[active[1]],
           m(static_cast<Eigen::Index>(active[0]), static_cast<Eigen::Index>(active[1])));

  return {WeightedTree(next_vertex, std::move(edges), std::move(leaves), d.labels()), clamped};
}

}  // namespace hypertree
