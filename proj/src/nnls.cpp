#include "hypertree/nnls.hpp"

#include "hypertree/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <vector>

namespace hypertree {

namespace {

// Unconstrained least squares restricted to the passive columns.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<char>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Eigen::Index>(k));
  return z;
}

double kkt_violation(const Eigen::VectorXd& x, const Eigen::VectorXd& grad) {
  // grad = A^T (b - A x); optimality: grad <= 0 where x = 0, grad = 0 where x > 0.
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    worst = std::max(worst, x(j) > 0.0 ? std::abs(grad(j)) : grad(j));
  }
  return worst;
}

void projected_gradient(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                        double tol) {
  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::VectorXd atb = a.transpose() * b;
  // Power iteration for the Lipschitz constant of the gradient.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.cols());
  double lipschitz = 1.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::VectorXd gv = gram * v;
    const double norm = gv.norm();
    if (norm == 0.0) break;
    lipschitz = norm / v.norm();
    v = gv / norm;
  }
  const double step = 1.0 / (lipschitz * 1.01);
  for (int k = 0; k < 200000; ++k) {
    const Eigen::VectorXd grad = atb - gram * x;
    if (kkt_violation(x, grad) < tol) break;
    x = (x + step * grad).cwiseMax(0.0);
  }
}

}  // namespace

NnlsResult solve_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const NnlsOptions& opts) {
  if (a.rows() != b.size()) throw ArgumentError("NNLS right-hand side does not match matrix rows");
  const Eigen::Index cols = a.cols();
  NnlsResult result;
  result.x = Eigen::VectorXd::Zero(cols);
  if (cols == 0) {
    result.residual_norm = b.norm();
    return result;
  }
  const std::size_t budget = opts.max_iterations ? opts.max_iterations : 10 * static_cast<std::size_t>(cols);
  const double scale = std::max(1.0, (a.transpose() * b).cwiseAbs().maxCoeff());
  const double tol = opts.kkt_tolerance * scale;

  Eigen::VectorXd& x = result.x;
  std::vector<char> passive(static_cast<std::size_t>(cols), 0);
  Eigen::VectorXd grad = a.transpose() * (b - a * x);
  bool converged = false;

  while (result.iterations < budget) {
    Eigen::Index enter = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best) {
        best = grad(j);
        enter = j;
      }
    }
    if (enter < 0) {
      converged = true;
      break;
    }
    ++result.iterations;
    passive[static_cast<std::size_t>(enter)] = 1;

    for (std::size_t inner = 0; inner < budget; ++inner) {
      Eigen::VectorXd z = passive_solve(a, b, passive);
      bool feasible = true;
      for (Eigen::Index j = 0; j < cols; ++j)
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          const double denom = x(j) - z(j);
          if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
        }
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= 1e-15 * scale) {
          passive[static_cast<std::size_t>(j)] = 0;
          x(j) = 0.0;
        }
      }
    }
    grad = a.transpose() * (b - a * x);
  }

  if (!converged || kkt_violation(x, grad) >= tol) {
    result.used_fallback = true;
    projected_gradient(a, b, x, tol);
  }
  x = x.cwiseMax(0.0);
  result.residual_norm = (a * x - b).norm();
  return result;
}

}  // namespace hypertree
