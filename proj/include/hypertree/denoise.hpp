#pragma once

// Encoder that replaces a dissimilarity matrix by the metric of n learned
// points in the Poincare ball, fitted under an lp distortion loss with
// Riemannian Adam.

#include "hypertree/distance_matrix.hpp"
#include "hypertree/geometry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypertree {

struct EncoderConfig {
  Eigen::Index dimension = 2;
  double curvature = 100.0;
  double p = 2.0;
  double learning_rate = 1e-3;
  std::size_t burnin_epochs = 50;
  double burnin_factor = 10.0;
  std::size_t total_epochs = 500;
  // Multiplier applied to the input before fitting. When unset, chosen so the
  // largest scaled dissimilarity is auto_scale_target / sqrt(c), i.e.
  // auto_scale_target in units of the ball's curvature radius.
  std::optional<double> scaling_factor;
  double auto_scale_target = 5.0;
  double init_radius = 1e-6;
  std::uint64_t seed = 0;
  // 0 = full batch; k > 0 = each leaf draws k partners per step.
  std::size_t pairs_per_step = 0;
  double boundary_margin = kDefaultBoundaryMargin;

  // Throws ArgumentError on invalid combinations.
  void validate() const;
};

// n labeled points sharing one curvature.
class PoincareEmbedding {
 public:
  PoincareEmbedding(std::vector<std::string> labels, Eigen::MatrixXd coords, double curvature);

  std::size_t size() const { return labels_.size(); }
  Eigen::Index dimension() const { return coords_.cols(); }
  double curvature() const { return curvature_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& coords() const { return coords_; }
  PoincarePoint point(std::size_t i) const;

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd coords_;  // one row per point
  double curvature_;
};

struct EmbeddingResult {
  PoincareEmbedding points;
  double scaling_factor = 1.0;  // resolved value actually used
  double final_loss = 0.0;      // against the original matrix, after unscaling
  std::vector<double> loss_trace;
  EncoderConfig config;
};

double resolve_scaling_factor(const DistanceMatrix& d, const EncoderConfig& cfg);

// (sum over i < j |d_B(x_i, x_j) - d(i, j)|^p)^(1/p)
double embedding_loss(const PoincareEmbedding& points, const DistanceMatrix& d, double p);

// Riemannian gradient of embedding_loss at every point.
std::vector<TangentVector> loss_gradient(const PoincareEmbedding& points, const DistanceMatrix& d, double p);

EmbeddingResult train_embedding(const DistanceMatrix& d, const EncoderConfig& cfg);

// Starts from `initial` instead of the seeded random initialization. The
// initial points must carry cfg.curvature and cfg.dimension.
EmbeddingResult train_embedding(const DistanceMatrix& d, const EncoderConfig& cfg,
                                const PoincareEmbedding& initial);

// Pairwise hyperbolic distances divided by the scaling factor.
DistanceMatrix denoised_metric(const EmbeddingResult& result);

}  // namespace hypertree
