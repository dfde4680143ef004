#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace hypertree {

// Symmetric, zero-diagonal, nonnegative dissimilarities over labeled entities.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  // Validates symmetry (exact), zero diagonal, finiteness and nonnegativity.
  DistanceMatrix(std::vector<std::string> labels, Eigen::MatrixXd values);

  // Unlabeled convenience: labels become "0", "1", ...
  explicit DistanceMatrix(Eigen::MatrixXd values);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  // Entries over unordered pairs i < j, row-major in (i, j).
  Eigen::VectorXd upper_triangle() const;

  double max_value() const;
  DistanceMatrix scaled(double s) const;

  // Entry order follows `labels`; throws ArgumentError if the label sets
  // differ.
  DistanceMatrix reordered(const std::vector<std::string>& labels) const;

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd values_;
};

std::vector<std::string> default_labels(std::size_t n);

// Number of unordered pairs and the flat index of pair (i, j), i < j.
inline std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace hypertree
