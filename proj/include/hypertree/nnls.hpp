#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace hypertree {

struct NnlsOptions {
  double kkt_tolerance = 1e-10;
  // 0 selects 10 * columns.
  std::size_t max_iterations = 0;
};

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  std::size_t iterations = 0;
  bool used_fallback = false;
};

// min ||A x - b||_2 subject to x >= 0. Lawson-Hanson active set; when it
// exhausts its iteration budget or the passive subproblem loses rank, the
// answer is polished by projected gradient.
NnlsResult solve_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const NnlsOptions& opts = {});

}  // namespace hypertree
