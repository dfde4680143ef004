#include "hypertree/costs.hpp"
#include "hypertree/edge_fit.hpp"
#include "hypertree/nnls.hpp"
#include "hypertree/tree.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypertree;

namespace {

double objective(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  return (a * x - b).squaredNorm();
}

Eigen::VectorXd weight_vector(const WeightedTree& t) {
  const std::vector<double> w = t.weights();
  return Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
}

}  // namespace

TEST(Nnls, UnconstrainedOptimumInsideOrthant) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  const Eigen::VectorXd x_true = Eigen::Vector2d(1.0, 2.0);
  const NnlsResult r = solve_nnls(a, a * x_true);
  EXPECT_LE((r.x - x_true).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.residual_norm, 1e-12);
  EXPECT_FALSE(r.used_fallback);
}

TEST(Nnls, ActiveConstraint) {
  // least squares would give x = (-1, 2); the constrained optimum pins x0 = 0
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  const NnlsResult r = solve_nnls(a, Eigen::Vector2d(-1.0, 2.0));
  EXPECT_EQ(r.x(0), 0.0);
  EXPECT_NEAR(r.x(1), 2.0, 1e-14);
  EXPECT_NEAR(r.residual_norm, 1.0, 1e-14);
}

TEST(Nnls, MatchesProjectedGradientOracle) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int k = 0; k < 30; ++k) {
    const Eigen::Index m = 6 + k % 10, n = 2 + k % 5;
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      b(i) = g(rng);
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
    }
    const NnlsResult r = solve_nnls(a, b);
    EXPECT_TRUE((r.x.array() >= 0.0).all());
    const Eigen::VectorXd ref = oracle::projected_gradient_nnls(a, b);
    EXPECT_LE(objective(a, r.x, b), objective(a, ref, b) + 1e-9);
    EXPECT_NEAR(r.residual_norm, (a * r.x - b).norm(), 1e-12);
  }
}

TEST(FitEdgeWeights, StarWithEqualDistances) {
  const WeightedTree star(4, {{0, 3, 9}, {1, 3, 9}, {2, 3, 9}}, {0, 1, 2}, {"a", "b", "c"});
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(3, 3, 2.0);
  m.diagonal().setZero();
  const WeightedTree fit = fit_edge_weights(star, DistanceMatrix({"a", "b", "c"}, m));
  for (double w : fit.weights()) EXPECT_NEAR(w, 1.0, 1e-12);
}

TEST(FitEdgeWeights, RecoversAdditiveWeights) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WeightedTree truth = oracle::random_tree(3 + seed % 15, 0.0, 1.0, seed, seed % 2 == 1);
    const DistanceMatrix d = leaf_distance_matrix(truth);
    const WeightedTree fit = fit_edge_weights(truth.with_unit_weights(), d);
    EXPECT_LE(lp_cost(leaf_distance_matrix(fit), d, 2.0), 1e-9);
    if (!truth.is_rooted()) {
      // an unrooted binary tree's weights are identifiable
      EXPECT_LE((weight_vector(fit) - weight_vector(truth)).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(FitEdgeWeights, MatchesOracleOnPerturbedQuartets) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> noise(-0.4, 0.4);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const WeightedTree t = oracle::random_tree(4, 0.0, 1.0, seed);
    Eigen::MatrixXd m = leaf_distance_matrix(t).values();
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) m(i, j) = m(j, i) = std::max(0.0, m(i, j) + noise(rng));
    const DistanceMatrix d(t.labels(), m);
    const WeightedTree fit = fit_edge_weights(t, d);
    const Eigen::MatrixXd a = design_matrix(t).incidence;
    const Eigen::VectorXd ref = oracle::projected_gradient_nnls(a, d.upper_triangle());
    const double got = objective(a, weight_vector(fit), d.upper_triangle());
    EXPECT_NEAR(got, objective(a, ref, d.upper_triangle()), 1e-6);
    EXPECT_LE(std::sqrt(got), lp_cost(leaf_distance_matrix(t), d, 2.0) + 1e-12);
    for (double w : fit.weights()) EXPECT_GE(w, 0.0);
  }
}

TEST(FitEdgeWeights, LabelOrderOfMatrixIgnored) {
  const WeightedTree t = oracle::random_tree(7, 0.0, 1.0, 3);
  const DistanceMatrix d = leaf_distance_matrix(t);
  std::vector<std::string> rev(d.labels().rbegin(), d.labels().rend());
  const WeightedTree fit = fit_edge_weights(t, d.reordered(rev));
  EXPECT_LE((weight_vector(fit) - weight_vector(t)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FitEdgeWeights, OtherExponents) {
  std::mt19937_64 rng(33);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedTree t = oracle::random_tree(6, 0.0, 1.0, seed);
    const DistanceMatrix d = oracle::random_real_matrix(6, 0.5, 2.0, rng);
    const DistanceMatrix labeled(t.labels(), d.values());
    for (double p : {1.0, 1.5, 3.0}) {
      const WeightedTree fit = fit_edge_weights(t, labeled, p);
      const WeightedTree l2 = fit_edge_weights(t, labeled, 2.0);
      for (double w : fit.weights()) EXPECT_GE(w, 0.0);
      // never worse than the p = 2 seed it starts from
      EXPECT_LE(lp_cost(leaf_distance_matrix(fit), labeled, p), lp_cost(leaf_distance_matrix(l2), labeled, p) + 1e-9);
    }
  }
}

TEST(FitEdgeWeights, CostIsConvexInWeights) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + static_cast<std::size_t>(k) % 10;
    const WeightedTree t = oracle::random_tree(n, 0.0, 1.0, 500 + static_cast<std::uint64_t>(k), k % 2 == 0);
    const DistanceMatrix d(t.labels(), oracle::random_real_matrix(n, 0.0, 3.0, rng).values());
    std::vector<double> w1(t.edges().size()), w2(t.edges().size()), mix(t.edges().size());
    for (double& w : w1) w = u(rng);
    for (double& w : w2) w = u(rng);
    const double lambda = u(rng);
    for (std::size_t e = 0; e < mix.size(); ++e) mix[e] = lambda * w1[e] + (1 - lambda) * w2[e];
    for (double p : {1.0, 2.0}) {
      const auto cost = [&](const std::vector<double>& w) {
        return lp_cost(leaf_distance_matrix(t.with_weights(w)), d, p);
      };
      EXPECT_LE(cost(mix), lambda * cost(w1) + (1 - lambda) * cost(w2) + 1e-12);
    }
  }
}
