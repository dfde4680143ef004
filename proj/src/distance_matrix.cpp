#include "hypertree/distance_matrix.hpp"

#include "hypertree/errors.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace hypertree {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, Eigen::MatrixXd values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (values_.rows() != n || values_.cols() != n) {
    throw ArgumentError("distance matrix shape does not match label count");
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw ArgumentError("duplicate label '" + l + "'");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) {
      throw ArgumentError("distance matrix has nonzero diagonal at " + std::to_string(i));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ArgumentError("distance matrix entry (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") is negative or non-finite");
      }
      if (v != values_(j, i)) {
        throw ArgumentError("distance matrix is not symmetric at (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
      }
    }
  }
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values)
    : DistanceMatrix(default_labels(static_cast<std::size_t>(values.rows())), Eigen::MatrixXd(values)) {}

Eigen::VectorXd DistanceMatrix::upper_triangle() const {
  const std::size_t n = size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(pair_count(n)));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(k++) = (*this)(i, j);
  return out;
}

double DistanceMatrix::max_value() const { return size() == 0 ? 0.0 : values_.maxCoeff(); }

DistanceMatrix DistanceMatrix::scaled(double s) const {
  if (!(s >= 0.0)) throw ArgumentError("scale must be nonnegative");
  return DistanceMatrix(labels_, values_ * s);
}

DistanceMatrix DistanceMatrix::reordered(const std::vector<std::string>& labels) const {
  if (labels.size() != labels_.size()) throw ArgumentError("label sets differ in size");
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < labels_.size(); ++i) index.emplace(labels_[i], static_cast<Eigen::Index>(i));
  std::vector<Eigen::Index> perm;
  perm.reserve(labels.size());
  for (const auto& l : labels) {
    auto it = index.find(l);
    if (it == index.end()) throw ArgumentError("label '" + l + "' not present in matrix");
    perm.push_back(it->second);
  }
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = values_(perm[i], perm[j]);
  return DistanceMatrix(labels, std::move(out));
}

}  // namespace hypertree
