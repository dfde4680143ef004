#include "hypertree/denoise.hpp"

#include "hypertree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace hypertree {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-15;

void require_matching(const PoincareEmbedding& points, const DistanceMatrix& d) {
  if (points.size() != d.size()) {
    throw ArgumentError("embedding has " + std::to_string(points.size()) + " points but matrix has " +
                        std::to_string(d.size()) + " entries");
  }
}

// d/dr |r|^p, with the subgradient 0 at r = 0.
double power_derivative(double r, double p) {
  if (r == 0.0) return 0.0;
  if (p == 2.0) return 2.0 * r;
  if (p == 1.0) return r > 0.0 ? 1.0 : -1.0;
  return p * std::pow(std::abs(r), p - 1.0) * (r > 0.0 ? 1.0 : -1.0);
}

double power(double r, double p) {
  if (p == 2.0) return r * r;
  if (p == 1.0) return std::abs(r);
  return std::pow(std::abs(r), p);
}

// Sum over pairs of |d_B - target|^p.
double power_loss(const Eigen::MatrixXd& x, const Eigen::MatrixXd& target, double c, double p) {
  const Eigen::Index n = x.rows();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      sum += power(ball::distance(x.row(i).transpose(), x.row(j).transpose(), c) - target(i, j), p);
  return sum;
}

void accumulate_pair(const Eigen::MatrixXd& x, const Eigen::MatrixXd& target, double c, double p,
                     Eigen::Index i, Eigen::Index j, Eigen::MatrixXd& grad) {
  const Eigen::VectorXd xi = x.row(i).transpose();
  const Eigen::VectorXd xj = x.row(j).transpose();
  const double coef = power_derivative(ball::distance(xi, xj, c) - target(i, j), p);
  if (coef == 0.0) return;
  grad.row(i) += coef * ball::distance_gradient(xi, xj, c).transpose();
  grad.row(j) += coef * ball::distance_gradient(xj, xi, c).transpose();
}

// Ambient gradient of the p-th power loss over all pairs.
Eigen::MatrixXd power_loss_gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& target, double c,
                                    double p) {
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) accumulate_pair(x, target, c, p, i, j, grad);
  return grad;
}

std::string describe_non_finite(const Eigen::MatrixXd& x, const Eigen::MatrixXd& target, double c,
                                std::size_t epoch) {
  std::ostringstream msg;
  msg << "non-finite encoder loss at epoch " << epoch;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      const double dist = ball::distance(x.row(i).transpose(), x.row(j).transpose(), c);
      if (!std::isfinite(dist) || !std::isfinite(target(i, j))) {
        msg << " (first offending pair " << i << ", " << j << ")";
        return msg.str();
      }
    }
  return msg.str();
}

Eigen::MatrixXd random_init(std::size_t n, Eigen::Index dim, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), dim);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::VectorXd dir(dim);
    do {
      for (Eigen::Index k = 0; k < dim; ++k) dir(k) = normal(rng);
    } while (dir.norm() == 0.0);
    const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
    x.row(i) = (r / dir.norm()) * dir.transpose();
  }
  return x;
}

}  // namespace

void EncoderConfig::validate() const {
  if (dimension < 2) throw ArgumentError("embedding dimension must be at least 2");
  if (!(curvature > 0.0)) throw ArgumentError("curvature must be positive");
  if (!(p >= 1.0)) throw ArgumentError("norm exponent p must be >= 1");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
  if (!(burnin_factor > 0.0)) throw ArgumentError("burn-in factor must be positive");
  if (total_epochs == 0) throw ArgumentError("total epochs must be positive");
  if (burnin_epochs > total_epochs) throw ArgumentError("burn-in epochs exceed total epochs");
  if (scaling_factor && !(*scaling_factor > 0.0)) throw ArgumentError("scaling factor must be positive");
  if (!(auto_scale_target > 0.0)) throw ArgumentError("auto scale target must be positive");
  if (!(init_radius > 0.0) || !(std::sqrt(curvature) * init_radius < 1.0)) {
    throw ArgumentError("initialization radius must be positive and inside the ball");
  }
  if (!(boundary_margin > 0.0 && boundary_margin <= 1e-2)) {
    throw ArgumentError("boundary margin must lie in (0, 1e-2]");
  }
}

PoincareEmbedding::PoincareEmbedding(std::vector<std::string> labels, Eigen::MatrixXd coords,
                                     double curvature)
    : labels_(std::move(labels)), coords_(std::move(coords)), curvature_(curvature) {
  if (static_cast<Eigen::Index>(labels_.size()) != coords_.rows()) {
    throw ArgumentError("embedding label count does not match coordinate rows");
  }
  if (!(curvature_ > 0.0)) throw ArgumentError("curvature must be positive");
  if (coords_.cols() < 2) throw ArgumentError("embedding dimension must be at least 2");
  for (Eigen::Index i = 0; i < coords_.rows(); ++i) {
    if (!coords_.row(i).allFinite() || curvature_ * coords_.row(i).squaredNorm() >= 1.0) {
      throw DomainError("embedding point " + std::to_string(i) + " is not inside the Poincare ball");
    }
  }
}

PoincarePoint PoincareEmbedding::point(std::size_t i) const {
  return PoincarePoint(coords_.row(static_cast<Eigen::Index>(i)).transpose(), curvature_);
}

double resolve_scaling_factor(const DistanceMatrix& d, const EncoderConfig& cfg) {
  if (cfg.scaling_factor) return *cfg.scaling_factor;
  const double max = d.max_value();
  return max > 0.0 ? cfg.auto_scale_target / (std::sqrt(cfg.curvature) * max) : 1.0;
}

double embedding_loss(const PoincareEmbedding& points, const DistanceMatrix& d, double p) {
  require_matching(points, d);
  if (!(p >= 1.0)) throw ArgumentError("norm exponent p must be >= 1");
  return std::pow(power_loss(points.coords(), d.values(), points.curvature(), p), 1.0 / p);
}

std::vector<TangentVector> loss_gradient(const PoincareEmbedding& points, const DistanceMatrix& d, double p) {
  require_matching(points, d);
  if (!(p >= 1.0)) throw ArgumentError("norm exponent p must be >= 1");
  const double c = points.curvature();
  const Eigen::MatrixXd& x = points.coords();
  const double total = power_loss(x, d.values(), c, p);
  // Chain rule through the outer 1/p root.
  const double outer = total > 0.0 ? std::pow(total, 1.0 / p - 1.0) / p : 0.0;
  const Eigen::MatrixXd egrad = power_loss_gradient(x, d.values(), c, p);
  std::vector<TangentVector> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double shrink = 1.0 - c * x.row(row).squaredNorm();
    out.push_back({points.point(i), (outer * shrink * shrink / 4.0) * egrad.row(row).transpose()});
  }
  return out;
}

EmbeddingResult train_embedding(const DistanceMatrix& d, const EncoderConfig& cfg) {
  cfg.validate();
  Eigen::MatrixXd init = random_init(d.size(), cfg.dimension, cfg.init_radius, cfg.seed);
  return train_embedding(d, cfg, PoincareEmbedding(d.labels(), std::move(init), cfg.curvature));
}

EmbeddingResult train_embedding(const DistanceMatrix& d, const EncoderConfig& cfg,
                                const PoincareEmbedding& initial) {
  cfg.validate();
  require_matching(initial, d);
  if (initial.curvature() != cfg.curvature) throw ArgumentError("initial points use a different curvature");
  if (initial.dimension() != cfg.dimension) throw ArgumentError("initial points use a different dimension");

  const double c = cfg.curvature;
  const double sf = resolve_scaling_factor(d, cfg);
  const Eigen::MatrixXd target = sf * d.values();
  const Eigen::Index n = static_cast<Eigen::Index>(d.size());
  const Eigen::Index dim = cfg.dimension;

  Eigen::MatrixXd x = initial.coords();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd row = x.row(i).transpose();
    ball::project(row, c, cfg.boundary_margin);
    x.row(i) = row.transpose();
  }
  Eigen::MatrixXd first_moment = Eigen::MatrixXd::Zero(n, dim);
  Eigen::VectorXd second_moment = Eigen::VectorXd::Zero(n);

  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Eigen::Index> partners(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)));

  std::vector<double> trace;
  trace.reserve(cfg.total_epochs);
  double beta1_power = 1.0;
  double beta2_power = 1.0;

  for (std::size_t epoch = 0; epoch < cfg.total_epochs; ++epoch) {
    const double lr = epoch < cfg.burnin_epochs ? cfg.learning_rate : cfg.learning_rate * cfg.burnin_factor;

    Eigen::MatrixXd egrad;
    if (cfg.pairs_per_step == 0 || cfg.pairs_per_step >= partners.size()) {
      egrad = power_loss_gradient(x, target, c, cfg.p);
    } else {
      egrad = Eigen::MatrixXd::Zero(n, dim);
      for (Eigen::Index i = 0; i < n; ++i) {
        std::size_t k = 0;
        for (Eigen::Index j = 0; j < n; ++j)
          if (j != i) partners[k++] = j;
        for (std::size_t s = 0; s < cfg.pairs_per_step; ++s) {
          std::uniform_int_distribution<std::size_t> pick(s, partners.size() - 1);
          std::swap(partners[s], partners[pick(rng)]);
          accumulate_pair(x, target, c, cfg.p, i, partners[s], egrad);
        }
      }
    }

    beta1_power *= kBeta1;
    beta2_power *= kBeta2;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double shrink = 1.0 - c * x.row(i).squaredNorm();
      const Eigen::VectorXd rgrad = (shrink * shrink / 4.0) * egrad.row(i).transpose();
      const double lambda = 2.0 / shrink;
      first_moment.row(i) = kBeta1 * first_moment.row(i) + (1.0 - kBeta1) * rgrad.transpose();
      second_moment(i) = kBeta2 * second_moment(i) + (1.0 - kBeta2) * lambda * lambda * rgrad.squaredNorm();
      const double denom = std::sqrt(second_moment(i) / (1.0 - beta2_power)) + kAdamEps;
      const Eigen::VectorXd direction = first_moment.row(i).transpose() / ((1.0 - beta1_power) * denom);
      Eigen::VectorXd moved = ball::exp_map(x.row(i).transpose(), -lr * direction, c);
      ball::project(moved, c, cfg.boundary_margin);
      x.row(i) = moved.transpose();
    }

    const double loss = std::pow(power_loss(x, target, c, cfg.p), 1.0 / cfg.p) / sf;
    if (!std::isfinite(loss) || !x.allFinite()) throw NumericalError(describe_non_finite(x, target, c, epoch));
    trace.push_back(loss);
  }

  EmbeddingResult result{PoincareEmbedding(d.labels(), std::move(x), c), sf, trace.back(), std::move(trace), cfg};
  return result;
}

DistanceMatrix denoised_metric(const EmbeddingResult& result) {
  const PoincareEmbedding& pts = result.points;
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out(i, j) = out(j, i) =
          ball::distance(pts.coords().row(i).transpose(), pts.coords().row(j).transpose(), pts.curvature()) /
          result.scaling_factor;
    }
  return DistanceMatrix(pts.labels(), std::move(out));
}

}  // namespace hypertree
