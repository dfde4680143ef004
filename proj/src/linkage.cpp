#include "hypertree/linkage.hpp"

#include "hypertree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hypertree {

LinkageMethod parse_linkage_method(std::string_view name) {
  if (name == "single") return LinkageMethod::single;
  if (name == "complete") return LinkageMethod::complete;
  if (name == "average") return LinkageMethod::average;
  if (name == "weighted") return LinkageMethod::weighted;
  throw ArgumentError("unknown linkage method '" + std::string(name) + "'");
}

std::string to_string(LinkageMethod m) {
  switch (m) {
    case LinkageMethod::single: return "single";
    case LinkageMethod::complete: return "complete";
    case LinkageMethod::average: return "average";
    case LinkageMethod::weighted: return "weighted";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double updated_distance(LinkageMethod method, double da, double db, std::size_t na, std::size_t nb) {
  switch (method) {
    case LinkageMethod::single: return std::min(da, db);
    case LinkageMethod::complete: return std::max(da, db);
    case LinkageMethod::average:
      return (static_cast<double>(na) * da + static_cast<double>(nb) * db) / static_cast<double>(na + nb);
    case LinkageMethod::weighted: return 0.5 * (da + db);
  }
  return da;
}

void check_dendrogram(const Dendrogram& dend) {
  if (dend.labels.size() != dend.n) throw StructuralError("dendrogram label count differs from n");
  if (dend.n > 0 && dend.merges.size() != dend.n - 1) {
    throw StructuralError("dendrogram over " + std::to_string(dend.n) + " leaves needs " +
                          std::to_string(dend.n - 1) + " merges");
  }
  std::vector<char> used(2 * dend.n, 0);
  for (std::size_t k = 0; k < dend.merges.size(); ++k) {
    const Merge& mg = dend.merges[k];
    const std::size_t limit = dend.n + k;
    if (mg.a >= limit || mg.b >= limit || mg.a == mg.b || used[mg.a] || used[mg.b]) {
      throw StructuralError("merge " + std::to_string(k) + " references an invalid cluster");
    }
    used[mg.a] = used[mg.b] = 1;
    if (!(mg.height >= 0.0) || !std::isfinite(mg.height)) {
      throw StructuralError("merge " + std::to_string(k) + " has an invalid height");
    }
  }
}

}  // namespace

Dendrogram linkage(const DistanceMatrix& d, LinkageMethod method) {
  const std::size_t n = d.size();
  if (n == 0) throw ArgumentError("linkage needs at least one entity");
  Dendrogram dend{n, {}, d.labels()};
  dend.merges.reserve(n - 1);

  Eigen::MatrixXd m = d.values();
  auto at = [&m](std::size_t i, std::size_t j) -> double& {
    return m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> cluster_id(n), cluster_size(n, 1);
  std::iota(cluster_id.begin(), cluster_id.end(), std::size_t{0});

  // Nearest active slot above each slot, smallest index on ties.
  std::vector<std::size_t> nn(n, kNone);
  std::vector<double> nn_dist(n, std::numeric_limits<double>::infinity());
  auto refresh = [&](std::size_t i) {
    nn[i] = kNone;
    nn_dist[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (alive[j] && at(i, j) < nn_dist[i]) {
        nn_dist[i] = at(i, j);
        nn[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && nn[i] != kNone && (a == kNone || nn_dist[i] < nn_dist[a])) a = i;
    }
    const std::size_t b = nn[a];
    const double height = nn_dist[a];
    const std::size_t na = cluster_size[a], nb = cluster_size[b];

    dend.merges.push_back({std::min(cluster_id[a], cluster_id[b]), std::max(cluster_id[a], cluster_id[b]),
                           height, na + nb});
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k] || k == a || k == b) continue;
      at(a, k) = at(k, a) = updated_distance(method, at(a, k), at(b, k), na, nb);
    }
    alive[b] = 0;
    cluster_id[a] = n + step;
    cluster_size[a] = na + nb;

    refresh(a);
    for (std::size_t i = 0; i < a; ++i) {
      if (!alive[i]) continue;
      if (nn[i] == a || nn[i] == b) {
        refresh(i);
      } else if (at(i, a) < nn_dist[i] || (at(i, a) == nn_dist[i] && a < nn[i])) {
        nn_dist[i] = at(i, a);
        nn[i] = a;
      }
    }
    for (std::size_t i = a + 1; i < b; ++i)
      if (alive[i] && nn[i] == b) refresh(i);
  }
  return dend;
}

DistanceMatrix dendrogram_to_ultrametric(const Dendrogram& dend) {
  check_dendrogram(dend);
  const std::size_t n = dend.n;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<std::vector<std::size_t>> members(2 * n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  for (std::size_t k = 0; k < dend.merges.size(); ++k) {
    const Merge& mg = dend.merges[k];
    for (std::size_t i : members[mg.a])
      for (std::size_t j : members[mg.b]) {
        u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mg.height;
        u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = mg.height;
      }
    auto& joined = members[n + k];
    joined = std::move(members[mg.a]);
    joined.insert(joined.end(), members[mg.b].begin(), members[mg.b].end());
    members[mg.b].clear();
  }
  return DistanceMatrix(dend.labels, std::move(u));
}

WeightedTree dendrogram_to_tree(const Dendrogram& dend) {
  check_dendrogram(dend);
  const std::size_t n = dend.n;
  if (n == 0) throw StructuralError("empty dendrogram");
  if (n == 1) return WeightedTree::single_vertex(dend.labels[0]);

  std::vector<double> half_height(2 * n - 1, 0.0);
  std::vector<Edge> edges;
  edges.reserve(2 * n - 2);
  double previous = 0.0;
  for (std::size_t k = 0; k < dend.merges.size(); ++k) {
    const Merge& mg = dend.merges[k];
    if (mg.height < previous - 1e-12 * std::max(1.0, previous)) {
      throw StructuralError("dendrogram heights decrease at merge " + std::to_string(k));
    }
    previous = std::max(previous, mg.height);
    const VertexId v = n + k;
    half_height[v] = std::max(mg.height / 2.0, std::max(half_height[mg.a], half_height[mg.b]));
    edges.push_back({mg.a, v, half_height[v] - half_height[mg.a]});
    edges.push_back({mg.b, v, half_height[v] - half_height[mg.b]});
  }
  std::vector<VertexId> leaves(n);
  std::iota(leaves.begin(), leaves.end(), VertexId{0});
  return WeightedTree(2 * n - 1, std::move(edges), std::move(leaves), dend.labels, 2 * n - 2);
}

}  // namespace hypertree
