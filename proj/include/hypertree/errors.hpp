#pragma once

#include <stdexcept>
#include <string>

namespace hypertree {

// Bad argument combinations: mismatched sizes or curvatures, out-of-range
// parameters, unknown names.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point on or outside the Poincare ball boundary.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed graphs and trees: disconnected, cyclic, bad root, decreasing
// dendrogram heights, impossible noise requests.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File content that fails parsing or validation. The message names the file
// and the offending location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values during optimization.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypertree
