#pragma once

// Poincare ball model B^d_c = { x : sqrt(c) |x| < 1 } of hyperbolic space with
// curvature -c.

#include <Eigen/Core>

namespace hypertree {

inline constexpr double kDefaultBoundaryMargin = 1e-5;

class PoincarePoint {
 public:
  // Throws ArgumentError when c <= 0 or dim < 2, DomainError when the point
  // is not strictly inside the ball.
  PoincarePoint(Eigen::VectorXd coords, double curvature);

  static PoincarePoint origin(Eigen::Index dim, double curvature);

  const Eigen::VectorXd& coords() const { return coords_; }
  double curvature() const { return curvature_; }
  Eigen::Index dim() const { return coords_.size(); }

  // 2 / (1 - c |x|^2)
  double conformal_factor() const;

 private:
  Eigen::VectorXd coords_;
  double curvature_;
};

struct TangentVector {
  PoincarePoint base;
  Eigen::VectorXd direction;
};

double poincare_distance(const PoincarePoint& x, const PoincarePoint& y);
PoincarePoint mobius_add(const PoincarePoint& x, const PoincarePoint& y);
PoincarePoint mobius_scale(double t, const PoincarePoint& x);
PoincarePoint mobius_neg(const PoincarePoint& x);

// Point at parameter t in [0, 1] along the geodesic from x to y.
PoincarePoint geodesic_point(const PoincarePoint& x, const PoincarePoint& y, double t);

PoincarePoint exp_map(const TangentVector& v);

// Radially pulls x back inside sqrt(c)|x| <= 1 - margin. margin in (0, 1e-2].
PoincarePoint project_to_ball(const Eigen::VectorXd& x, double curvature,
                              double margin = kDefaultBoundaryMargin);

// Unchecked kernels shared with the optimizer. Callers guarantee that all
// inputs lie in the ball of curvature c.
namespace ball {

double distance(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y, double c);

// Ambient (Euclidean) gradient of distance(x, y) with respect to x. Zero when
// x == y.
Eigen::VectorXd distance_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const Eigen::Ref<const Eigen::VectorXd>& y, double c);

Eigen::VectorXd mobius_add(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& y, double c);

Eigen::VectorXd mobius_scale(double t, const Eigen::Ref<const Eigen::VectorXd>& x, double c);

Eigen::VectorXd exp_map(const Eigen::Ref<const Eigen::VectorXd>& base,
                        const Eigen::Ref<const Eigen::VectorXd>& direction, double c);

void project(Eigen::Ref<Eigen::VectorXd> x, double c, double margin);

}  // namespace ball

}  // namespace hypertree
