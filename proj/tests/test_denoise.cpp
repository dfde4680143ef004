#include "hypertree/costs.hpp"
#include "hypertree/denoise.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/hyperbolicity.hpp"
#include "hypertree/tree.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hypertree;

namespace {

Eigen::MatrixXd random_coords(std::size_t n, Eigen::Index dim, double c, double max_radius, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, max_radius);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), dim);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::VectorXd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v(k) = g(rng);
    x.row(i) = (v.normalized() * u(rng) / std::sqrt(c)).transpose();
  }
  return x;
}

double pair_loss(const PoincareEmbedding& e, const DistanceMatrix& d, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      s += std::pow(std::abs(poincare_distance(e.point(i), e.point(j)) - d(i, j)), p);
  return std::pow(s, 1.0 / p);
}

EncoderConfig quick_config(std::uint64_t seed, std::size_t epochs = 300) {
  EncoderConfig cfg;
  cfg.total_epochs = epochs;
  cfg.burnin_epochs = epochs / 10;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(EncoderConfig, Validation) {
  EXPECT_NO_THROW(EncoderConfig{}.validate());
  const auto bad = [](auto edit) {
    EncoderConfig cfg;
    edit(cfg);
    EXPECT_THROW(cfg.validate(), ArgumentError);
  };
  bad([](EncoderConfig& c) { c.dimension = 1; });
  bad([](EncoderConfig& c) { c.curvature = 0; });
  bad([](EncoderConfig& c) { c.p = 0.5; });
  bad([](EncoderConfig& c) { c.learning_rate = 0; });
  bad([](EncoderConfig& c) { c.burnin_epochs = 600; });
  bad([](EncoderConfig& c) { c.total_epochs = 0; });
  bad([](EncoderConfig& c) { c.scaling_factor = -1.0; });
  bad([](EncoderConfig& c) { c.init_radius = 0.5; });
  bad([](EncoderConfig& c) { c.boundary_margin = 0.1; });
}

TEST(ScalingFactor, AutomaticAndExplicit) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 4, 4, 0;
  const DistanceMatrix d(m);
  EncoderConfig cfg;
  EXPECT_DOUBLE_EQ(resolve_scaling_factor(d, cfg), 5.0 / (10.0 * 4.0));
  cfg.curvature = 1.0;
  EXPECT_DOUBLE_EQ(resolve_scaling_factor(d, cfg), 5.0 / 4.0);
  cfg.scaling_factor = 0.3;
  EXPECT_EQ(resolve_scaling_factor(d, cfg), 0.3);
  cfg.scaling_factor.reset();
  EXPECT_EQ(resolve_scaling_factor(DistanceMatrix(Eigen::MatrixXd::Zero(3, 3)), cfg), 1.0);
}

TEST(EmbeddingLoss, Examples) {
  // n = 2: place the points so their distance is exactly d(0, 1)
  const double c = 4.0;
  const PoincareEmbedding two({"a", "b"}, (Eigen::MatrixXd(2, 2) << 0.1, 0.0, -0.2, 0.0).finished(), c);
  const double dist = poincare_distance(two.point(0), two.point(1));
  Eigen::MatrixXd m(2, 2);
  m << 0, dist, dist, 0;
  EXPECT_NEAR(embedding_loss(two, DistanceMatrix({"a", "b"}, m), 2.0), 0.0, 1e-15);

  std::mt19937_64 rng(41);
  const DistanceMatrix d = oracle::random_real_matrix(6, 0, 2, rng);
  const PoincareEmbedding origin(d.labels(), Eigen::MatrixXd::Zero(6, 3), 1.0);
  EXPECT_NEAR(embedding_loss(origin, d, 2.0), d.upper_triangle().norm(), 1e-12);
}

TEST(EmbeddingLoss, MatchesPairRecomputation) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 20; ++k) {
    const double c = k % 2 ? 1.0 : 100.0;
    const std::size_t n = 2 + static_cast<std::size_t>(k) % 9;
    const DistanceMatrix d = oracle::random_real_matrix(n, 0, 1, rng);
    const PoincareEmbedding e(d.labels(), random_coords(n, 2 + k % 3, c, 0.95, rng), c);
    for (double p : {1.0, 2.0, 3.0}) EXPECT_NEAR(embedding_loss(e, d, p), pair_loss(e, d, p), 1e-12);
  }
}

TEST(EmbeddingLoss, Errors) {
  const PoincareEmbedding e({"a", "b"}, Eigen::MatrixXd::Zero(2, 2), 1.0);
  EXPECT_THROW(embedding_loss(e, DistanceMatrix(Eigen::MatrixXd::Zero(3, 3)), 2.0), ArgumentError);
  EXPECT_THROW(loss_gradient(e, DistanceMatrix(Eigen::MatrixXd::Zero(3, 3)), 2.0), ArgumentError);
}

TEST(LossGradient, ZeroAtPerfectFit) {
  std::mt19937_64 rng(43);
  const PoincareEmbedding e(default_labels(5), random_coords(5, 3, 2.0, 0.9, rng), 2.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) m(i, j) = poincare_distance(e.point(i), e.point(j));
  // symmetrize exactly
  m = (0.5 * (m + m.transpose())).eval();
  for (const TangentVector& g : loss_gradient(e, DistanceMatrix(m), 2.0)) EXPECT_EQ(g.direction.norm(), 0.0);
}

TEST(LossGradient, TwoPointsOnALine) {
  const PoincareEmbedding e({"a", "b"}, (Eigen::MatrixXd(2, 2) << 0.2, 0.0, -0.3, 0.0).finished(), 1.0);
  const double dist = poincare_distance(e.point(0), e.point(1));
  for (double target : {dist + 1.0, dist - 0.5}) {
    Eigen::MatrixXd m(2, 2);
    m << 0, target, target, 0;
    const auto g = loss_gradient(e, DistanceMatrix({"a", "b"}, m), 2.0);
    EXPECT_EQ(g[0].direction(1), 0.0);
    EXPECT_EQ(g[1].direction(1), 0.0);
    // too close: descent pushes a (on the right) further right, so the
    // gradient points left; too far: the reverse
    if (target > dist) {
      EXPECT_LT(g[0].direction(0), 0.0);
      EXPECT_GT(g[1].direction(0), 0.0);
    } else {
      EXPECT_GT(g[0].direction(0), 0.0);
      EXPECT_LT(g[1].direction(0), 0.0);
    }
  }
}

TEST(LossGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 20; ++k) {
    const double c = k % 2 ? 1.0 : 100.0;
    const std::size_t n = 2 + static_cast<std::size_t>(k) % 7;
    const Eigen::Index dim = 2 + k % 3;
    const double p = k % 4 == 3 ? 3.0 : 2.0;
    const DistanceMatrix d = oracle::random_real_matrix(n, 0.1, 3.0 / std::sqrt(c), rng);
    const Eigen::MatrixXd x = random_coords(n, dim, c, 0.8, rng);
    const PoincareEmbedding e(d.labels(), x, c);
    const auto g = loss_gradient(e, d, p);
    const double h = 1e-6 / std::sqrt(c);
    Eigen::MatrixXd fd(x.rows(), x.cols()), an(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double conformal = std::pow(1.0 - c * x.row(i).squaredNorm(), 2) / 4.0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        Eigen::MatrixXd up = x, down = x;
        up(i, j) += h;
        down(i, j) -= h;
        const double diff = (embedding_loss(PoincareEmbedding(d.labels(), up, c), d, p) -
                             embedding_loss(PoincareEmbedding(d.labels(), down, c), d, p)) /
                            (2 * h);
        fd(i, j) = conformal * diff;
        an(i, j) = g[static_cast<std::size_t>(i)].direction(j);
      }
    }
    EXPECT_LT((an - fd).norm(), 1e-4 * std::max(fd.norm(), 1e-12)) << "config " << k;
  }
}

TEST(TrainEmbedding, TwoPointsFitExactly) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1.7, 1.7, 0;
  const EmbeddingResult r = train_embedding(DistanceMatrix(m), quick_config(0, 500));
  EXPECT_LT(r.final_loss, 1e-4);
  EXPECT_EQ(r.loss_trace.size(), 500u);
  EXPECT_EQ(r.loss_trace.back(), r.final_loss);
}

TEST(TrainEmbedding, FourLeafTreeMetric) {
  const DistanceMatrix d = leaf_distance_matrix(oracle::random_tree(4, 0.2, 1.0, 1));
  const EmbeddingResult r = train_embedding(d, quick_config(0, 1000));
  EXPECT_LT(r.final_loss, 0.05 * d.upper_triangle().norm());
}

TEST(TrainEmbedding, PointsStayInsideBall) {
  std::mt19937_64 rng(45);
  const DistanceMatrix d = oracle::random_real_matrix(12, 0, 1, rng);
  EncoderConfig cfg = quick_config(3, 200);
  cfg.scaling_factor = 50.0;  // far beyond what the ball can hold
  const EmbeddingResult r = train_embedding(d, cfg);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    EXPECT_LE(std::sqrt(cfg.curvature) * r.points.coords().row(static_cast<Eigen::Index>(i)).norm(),
              1.0 - cfg.boundary_margin + 1e-12);
  }
  EXPECT_TRUE(std::isfinite(r.final_loss));
}

TEST(TrainEmbedding, Deterministic) {
  std::mt19937_64 rng(46);
  const DistanceMatrix d = oracle::random_real_matrix(10, 0, 1, rng);
  for (std::size_t pairs : {0u, 3u}) {
    EncoderConfig cfg = quick_config(9, 150);
    cfg.pairs_per_step = pairs;
    const EmbeddingResult a = train_embedding(d, cfg);
    const EmbeddingResult b = train_embedding(d, cfg);
    EXPECT_EQ(a.loss_trace, b.loss_trace);
    EXPECT_EQ(a.points.coords(), b.points.coords());
    cfg.seed = 10;
    EXPECT_NE(train_embedding(d, cfg).loss_trace, a.loss_trace);
  }
}

TEST(TrainEmbedding, FinalLossIsUnscaled) {
  std::mt19937_64 rng(47);
  const DistanceMatrix d = oracle::random_real_matrix(7, 0, 4, rng);
  const EmbeddingResult r = train_embedding(d, quick_config(1, 100));
  EXPECT_NEAR(r.final_loss, lp_cost(denoised_metric(r), d, 2.0), 1e-12 * std::max(1.0, r.final_loss));
}

TEST(TrainEmbedding, CurvatureConsistency) {
  // curvature c on D against curvature 1 on sqrt(c) D, with points mapped by
  // x -> x / sqrt(c) and the learning rate scaled by sqrt(c)
  std::mt19937_64 rng(48);
  const DistanceMatrix d = oracle::random_real_matrix(8, 0.2, 1.0, rng);
  for (double c : {4.0, 100.0}) {
    const double s = std::sqrt(c);
    EncoderConfig unit = quick_config(0, 200);
    unit.curvature = 1.0;
    unit.dimension = 3;
    unit.learning_rate = 1e-3 * s;
    unit.init_radius = 1e-3;
    EncoderConfig curved = quick_config(0, 200);
    curved.curvature = c;
    curved.dimension = 3;
    curved.init_radius = 1e-3 / s;
    const Eigen::MatrixXd x = random_coords(8, 3, 1.0, 1e-3, rng);
    const EmbeddingResult a = train_embedding(d.scaled(s), unit, PoincareEmbedding(d.labels(), x, 1.0));
    const EmbeddingResult b = train_embedding(d, curved, PoincareEmbedding(d.labels(), x / s, c));
    EXPECT_EQ(a.scaling_factor, b.scaling_factor);
    ASSERT_EQ(a.loss_trace.size(), b.loss_trace.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.loss_trace.size(); ++k)
      worst = std::max(worst, std::abs(a.loss_trace[k] / s - b.loss_trace[k]));
    EXPECT_LT(worst, 1e-6) << "c = " << c;
  }
}

TEST(TrainEmbedding, LateLossMostlyNonIncreasing) {
  int monotone = 0, runs = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed, ++runs) {
    const DistanceMatrix d = leaf_distance_matrix(oracle::random_tree(6 + seed % 5, 0.1, 1.0, seed));
    const EmbeddingResult r = train_embedding(d, quick_config(seed, 400));
    const std::size_t start = r.loss_trace.size() - r.loss_trace.size() / 10;
    bool ok = true;
    for (std::size_t k = start + 1; k < r.loss_trace.size(); ++k)
      ok = ok && r.loss_trace[k] <= r.loss_trace[k - 1] * (1 + 1e-12);
    monotone += ok;
  }
  EXPECT_GE(monotone, (9 * runs + 9) / 10);
}

TEST(DenoisedMetric, Properties) {
  const PoincareEmbedding same(default_labels(4), Eigen::MatrixXd::Constant(4, 2, 0.01), 100.0);
  EmbeddingResult r{same, 2.0, 0.0, {0.0}, EncoderConfig{}};
  EXPECT_EQ(denoised_metric(r).max_value(), 0.0);

  const DistanceMatrix d = leaf_distance_matrix(oracle::random_tree(8, 0.1, 1.0, 4));
  const EmbeddingResult fit = train_embedding(d, quick_config(2, 300));
  const DistanceMatrix out = denoised_metric(fit);
  EXPECT_EQ(out.labels(), d.labels());
  EXPECT_EQ(out.values(), out.values().transpose());
  EXPECT_EQ(out.values().diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(four_point_check(out, 2 * delta_exact(out).delta + 1e-12));
}
