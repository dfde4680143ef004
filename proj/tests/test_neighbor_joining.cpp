#include "hypertree/errors.hpp"
#include "hypertree/neighbor_joining.hpp"
#include "hypertree/tree.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace hypertree;

namespace {

double max_error(const WeightedTree& t, const DistanceMatrix& d) {
  const DistanceMatrix fit = leaf_distance_matrix(t).reordered(d.labels());
  return (fit.values() - d.values()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(NeighborJoining, AdditiveQuartet) {
  Eigen::MatrixXd m(4, 4);
  m << 0, 2, 3, 3,  //
      2, 0, 3, 3,   //
      3, 3, 0, 2,   //
      3, 3, 2, 0;
  const DistanceMatrix d({"a", "b", "c", "d"}, m);
  const NeighborJoiningResult r = neighbor_joining(d);
  EXPECT_EQ(r.clamped_edges, 0u);
  EXPECT_FALSE(r.tree.is_rooted());
  EXPECT_EQ(r.tree.labels(), d.labels());
  ASSERT_EQ(r.tree.edges().size(), 5u);
  for (double w : r.tree.weights()) EXPECT_NEAR(w, 1.0, 1e-12);
  EXPECT_LE(max_error(r.tree, d), 1e-9);
  // a and b hang off the same internal vertex
  EXPECT_EQ(r.tree.neighbors(0)[0].vertex, r.tree.neighbors(1)[0].vertex);
  EXPECT_NE(r.tree.neighbors(0)[0].vertex, r.tree.neighbors(2)[0].vertex);
}

TEST(NeighborJoining, ThreeLeafStar) {
  Eigen::MatrixXd m(3, 3);
  m << 0, 3, 4,  //
      3, 0, 5,   //
      4, 5, 0;
  const NeighborJoiningResult r = neighbor_joining(DistanceMatrix(m));
  ASSERT_EQ(r.tree.vertex_count(), 4u);
  // pendants solve a + b = 3, a + c = 4, b + c = 5
  EXPECT_NEAR(r.tree.edges()[r.tree.neighbors(0)[0].edge].weight, 1.0, 1e-12);
  EXPECT_NEAR(r.tree.edges()[r.tree.neighbors(1)[0].edge].weight, 2.0, 1e-12);
  EXPECT_NEAR(r.tree.edges()[r.tree.neighbors(2)[0].edge].weight, 3.0, 1e-12);
  EXPECT_EQ(r.tree.degree(3), 3u);
}

TEST(NeighborJoining, TwoLeavesAndOne) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 2.5, 2.5, 0;
  const NeighborJoiningResult r = neighbor_joining(DistanceMatrix(m));
  ASSERT_EQ(r.tree.edges().size(), 1u);
  EXPECT_EQ(r.tree.edges()[0].weight, 2.5);

  const NeighborJoiningResult one = neighbor_joining(DistanceMatrix(Eigen::MatrixXd::Zero(1, 1)));
  EXPECT_EQ(one.tree.vertex_count(), 1u);
  EXPECT_EQ(one.tree.leaf_count(), 1u);
  EXPECT_THROW(neighbor_joining(DistanceMatrix()), ArgumentError);
}

TEST(NeighborJoining, RecoversRandomTreeMetrics) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 4 + seed % 29;
    const DistanceMatrix d = leaf_distance_matrix(oracle::random_tree(n, 0.1, 1.0, seed));
    const NeighborJoiningResult r = neighbor_joining(d);
    EXPECT_EQ(r.clamped_edges, 0u);
    EXPECT_LE(max_error(r.tree, d), 1e-9) << "seed " << seed;
    EXPECT_EQ(r.tree.edges().size(), 2 * n - 3);
  }
}

TEST(NeighborJoining, ClampsNegativeLengths) {
  std::mt19937_64 rng(51);
  std::size_t clamped = 0;
  for (int k = 0; k < 30; ++k) {
    const NeighborJoiningResult r = neighbor_joining(oracle::random_real_matrix(12, 0.0, 1.0, rng));
    const std::vector<double> w = r.tree.weights();
    EXPECT_GE(*std::min_element(w.begin(), w.end()), 0.0);
    clamped += r.clamped_edges;
    const auto zeros = static_cast<std::size_t>(std::count(w.begin(), w.end(), 0.0));
    EXPECT_LE(r.clamped_edges, zeros);
  }
  // random (non-additive) matrices regularly produce negative lengths
  EXPECT_GT(clamped, 0u);
}

TEST(NeighborJoining, Deterministic) {
  std::mt19937_64 rng(52);
  const DistanceMatrix d = oracle::random_integer_matrix(15, 1, 4, rng);  // many ties
  const NeighborJoiningResult a = neighbor_joining(d), b = neighbor_joining(d);
  EXPECT_EQ(a.tree.weights(), b.tree.weights());
  ASSERT_EQ(a.tree.edges().size(), b.tree.edges().size());
  for (std::size_t e = 0; e < a.tree.edges().size(); ++e) {
    EXPECT_EQ(a.tree.edges()[e].u, b.tree.edges()[e].u);
    EXPECT_EQ(a.tree.edges()[e].v, b.tree.edges()[e].v);
  }
}
