#pragma once

#include "hypertree/distance_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace hypertree {

enum class DeltaMethod { exact, sampled };

struct HyperbolicityReport {
  double delta = 0.0;
  DeltaMethod method = DeltaMethod::exact;
  std::uint64_t quadruples_evaluated = 0;
  std::optional<std::uint64_t> seed;
};

std::string to_string(DeltaMethod m);

// (i, j)_r = (d(r, i) + d(r, j) - d(i, j)) / 2
double gromov_product(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t r);

// Half the gap between the largest and second-largest of the three pairwise
// sums on the quadruple {a, b, c, e}.
double quadruple_delta(const DistanceMatrix& d, std::size_t a, std::size_t b, std::size_t c,
                       std::size_t e);

// Maximum quadruple statistic over all quadruples; zero below four points.
// Splits the outer loop over `threads` workers (0 = hardware concurrency);
// the result does not depend on the thread count.
HyperbolicityReport delta_exact(const DistanceMatrix& d, unsigned threads = 0);

// Maximum over `samples` quadruples of distinct indices drawn uniformly with
// a seeded generator. Lower bound on delta_exact.
HyperbolicityReport delta_sampled(const DistanceMatrix& d, std::uint64_t samples, std::uint64_t seed);

bool four_point_check(const DistanceMatrix& d, double tol);

// Strong triangle inequality d(x, y) <= max(d(x, z), d(y, z)) + tol.
bool ultrametric_check(const DistanceMatrix& d, double tol);

}  // namespace hypertree
