#include "hypertree/geometry.hpp"

#include "hypertree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hypertree {

namespace {

void require_inside(const Eigen::VectorXd& x, double c) {
  if (!x.allFinite()) throw DomainError("point has non-finite coordinates");
  if (c * x.squaredNorm() >= 1.0) {
    throw DomainError("point with sqrt(c)|x| = " + std::to_string(std::sqrt(c) * x.norm()) +
                      " is not inside the Poincare ball");
  }
}

void require_compatible(const PoincarePoint& x, const PoincarePoint& y) {
  if (x.curvature() != y.curvature()) throw ArgumentError("points have different curvatures");
  if (x.dim() != y.dim()) throw ArgumentError("points have different dimensions");
}

// Rounding can push a Mobius result onto the boundary; pull it back by the
// smallest representable amount.
PoincarePoint make_inside(Eigen::VectorXd v, double c) {
  const double limit = 1.0 - 1e-15;
  const double r = std::sqrt(c) * v.norm();
  if (r >= limit) v *= limit / r;
  return PoincarePoint(std::move(v), c);
}

}  // namespace

PoincarePoint::PoincarePoint(Eigen::VectorXd coords, double curvature)
    : coords_(std::move(coords)), curvature_(curvature) {
  if (!(curvature_ > 0.0) || !std::isfinite(curvature_)) {
    throw ArgumentError("curvature must be positive and finite");
  }
  if (coords_.size() < 2) throw ArgumentError("Poincare ball dimension must be at least 2");
  require_inside(coords_, curvature_);
}

PoincarePoint PoincarePoint::origin(Eigen::Index dim, double curvature) {
  return PoincarePoint(Eigen::VectorXd::Zero(dim), curvature);
}

double PoincarePoint::conformal_factor() const {
  return 2.0 / (1.0 - curvature_ * coords_.squaredNorm());
}

namespace ball {

double distance(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y, double c) {
  const double alpha = 1.0 - c * x.squaredNorm();
  const double beta = 1.0 - c * y.squaredNorm();
  const double gamma = 1.0 + 2.0 * c * (x - y).squaredNorm() / (alpha * beta);
  return std::acosh(std::max(gamma, 1.0)) / std::sqrt(c);
}

Eigen::VectorXd distance_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const Eigen::Ref<const Eigen::VectorXd>& y, double c) {
  const Eigen::VectorXd diff = x - y;
  const double diff_sq = diff.squaredNorm();
  if (diff_sq == 0.0) return Eigen::VectorXd::Zero(x.size());
  const double alpha = 1.0 - c * x.squaredNorm();
  const double beta = 1.0 - c * y.squaredNorm();
  // gamma - 1 kept separately; gamma^2 - 1 = (gamma - 1)(gamma + 1).
  const double gm1 = 2.0 * c * diff_sq / (alpha * beta);
  const double root = std::sqrt(gm1 * (gm1 + 2.0));
  const double scale = 4.0 * std::sqrt(c) / (alpha * beta * root);
  return scale * (diff + (c * diff_sq / alpha) * x);
}

Eigen::VectorXd mobius_add(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& y, double c) {
  const double xy = x.dot(y);
  const double xx = x.squaredNorm();
  const double yy = y.squaredNorm();
  const double denom = 1.0 + 2.0 * c * xy + c * c * xx * yy;
  return ((1.0 + 2.0 * c * xy + c * yy) * x + (1.0 - c * xx) * y) / denom;
}

Eigen::VectorXd mobius_scale(double t, const Eigen::Ref<const Eigen::VectorXd>& x, double c) {
  const double norm = x.norm();
  if (norm <= 1e-15) return Eigen::VectorXd::Zero(x.size());
  const double sc = std::sqrt(c);
  return (std::tanh(t * std::atanh(sc * norm)) / (sc * norm)) * x;
}

Eigen::VectorXd exp_map(const Eigen::Ref<const Eigen::VectorXd>& base,
                        const Eigen::Ref<const Eigen::VectorXd>& direction, double c) {
  const double norm = direction.norm();
  if (norm == 0.0) return base;
  const double sc = std::sqrt(c);
  const double lambda = 2.0 / (1.0 - c * base.squaredNorm());
  const Eigen::VectorXd step = (std::tanh(sc * lambda * norm / 2.0) / (sc * norm)) * direction;
  return mobius_add(base, step, c);
}

void project(Eigen::Ref<Eigen::VectorXd> x, double c, double margin) {
  const double limit = (1.0 - margin) / std::sqrt(c);
  const double norm = x.norm();
  if (norm <= limit) return;
  x *= limit / norm;
  // rounding can leave the norm an ulp above the limit; keep projection idempotent
  while (x.norm() > limit) x *= 1.0 - std::numeric_limits<double>::epsilon();
}

}  // namespace ball

double poincare_distance(const PoincarePoint& x, const PoincarePoint& y) {
  require_compatible(x, y);
  return ball::distance(x.coords(), y.coords(), x.curvature());
}

PoincarePoint mobius_add(const PoincarePoint& x, const PoincarePoint& y) {
  require_compatible(x, y);
  return make_inside(ball::mobius_add(x.coords(), y.coords(), x.curvature()), x.curvature());
}

PoincarePoint mobius_scale(double t, const PoincarePoint& x) {
  return make_inside(ball::mobius_scale(t, x.coords(), x.curvature()), x.curvature());
}

PoincarePoint mobius_neg(const PoincarePoint& x) {
  return PoincarePoint(-x.coords(), x.curvature());
}

PoincarePoint geodesic_point(const PoincarePoint& x, const PoincarePoint& y, double t) {
  require_compatible(x, y);
  if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("geodesic parameter must lie in [0, 1]");
  const double c = x.curvature();
  const Eigen::VectorXd delta = ball::mobius_add(-x.coords(), y.coords(), c);
  return make_inside(ball::mobius_add(x.coords(), ball::mobius_scale(t, delta, c), c), c);
}

PoincarePoint exp_map(const TangentVector& v) {
  if (v.direction.size() != v.base.dim()) {
    throw ArgumentError("tangent direction dimension does not match its base point");
  }
  const double c = v.base.curvature();
  return make_inside(ball::exp_map(v.base.coords(), v.direction, c), c);
}

PoincarePoint project_to_ball(const Eigen::VectorXd& x, double curvature, double margin) {
  if (!(margin > 0.0 && margin <= 1e-2)) throw ArgumentError("boundary margin must lie in (0, 1e-2]");
  if (!(curvature > 0.0)) throw ArgumentError("curvature must be positive");
  Eigen::VectorXd out = x;
  ball::project(out, curvature, margin);
  return PoincarePoint(std::move(out), curvature);
}

}  // namespace hypertree
