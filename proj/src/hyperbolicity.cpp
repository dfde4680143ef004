#include "hypertree/hyperbolicity.hpp"

#include "hypertree/errors.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <vector>

namespace hypertree {

std::string to_string(DeltaMethod m) { return m == DeltaMethod::exact ? "exact" : "sampled"; }

double gromov_product(const DistanceMatrix& d, std::size_t i, std::size_t j, std::size_t r) {
  const std::size_t n = d.size();
  if (i >= n || j >= n || r >= n) throw ArgumentError("Gromov product index out of range");
  return 0.5 * (d(r, i) + d(r, j) - d(i, j));
}

namespace {

inline double four_sums_gap(double ab, double ce, double ac, double be, double ae, double bc) {
  double s1 = ab + ce;
  double s2 = ac + be;
  double s3 = ae + bc;
  if (s1 < s2) std::swap(s1, s2);
  if (s2 < s3) std::swap(s2, s3);
  if (s1 < s2) std::swap(s1, s2);
  return s1 - s2;
}

// Largest four-sums gap over quadruples whose smallest index is in the
// stripe {first, first + stride, ...}.
double stripe_max_gap(const Eigen::MatrixXd& m, Eigen::Index first, Eigen::Index stride) {
  const Eigen::Index n = m.rows();
  double best = 0.0;
  for (Eigen::Index a = first; a < n; a += stride) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double ab = m(a, b);
      for (Eigen::Index c = b + 1; c < n; ++c) {
        const double ac = m(a, c);
        const double bc = m(b, c);
        for (Eigen::Index e = c + 1; e < n; ++e) {
          best = std::max(best, four_sums_gap(ab, m(c, e), ac, m(b, e), m(a, e), bc));
        }
      }
    }
  }
  return best;
}

std::uint64_t choose4(std::uint64_t n) {
  return n < 4 ? 0 : n * (n - 1) * (n - 2) * (n - 3) / 24;
}

}  // namespace

double quadruple_delta(const DistanceMatrix& d, std::size_t a, std::size_t b, std::size_t c,
                       std::size_t e) {
  return 0.5 * four_sums_gap(d(a, b), d(c, e), d(a, c), d(b, e), d(a, e), d(b, c));
}

HyperbolicityReport delta_exact(const DistanceMatrix& d, unsigned threads) {
  HyperbolicityReport report;
  report.method = DeltaMethod::exact;
  const std::size_t n = d.size();
  if (n < 4) return report;
  report.quadruples_evaluated = choose4(n);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<double> partial(threads, 0.0);
  if (threads == 1) {
    partial[0] = stripe_max_gap(d.values(), 0, 1);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] { partial[w] = stripe_max_gap(d.values(), w, threads); });
    }
  }
  report.delta = 0.5 * *std::max_element(partial.begin(), partial.end());
  return report;
}

HyperbolicityReport delta_sampled(const DistanceMatrix& d, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw ArgumentError("delta sampling needs at least one quadruple");
  HyperbolicityReport report;
  report.method = DeltaMethod::sampled;
  report.seed = seed;
  const std::size_t n = d.size();
  if (n < 4) return report;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  double best = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::size_t q[4];
    for (int k = 0; k < 4; ++k) {
      bool fresh = false;
      while (!fresh) {
        q[k] = pick(rng);
        fresh = std::none_of(q, q + k, [&](std::size_t v) { return v == q[k]; });
      }
    }
    best = std::max(best, quadruple_delta(d, q[0], q[1], q[2], q[3]));
  }
  report.delta = best;
  report.quadruples_evaluated = samples;
  return report;
}

bool four_point_check(const DistanceMatrix& d, double tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.size());
  const Eigen::MatrixXd& m = d.values();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      for (Eigen::Index c = b + 1; c < n; ++c)
        for (Eigen::Index e = c + 1; e < n; ++e)
          if (four_sums_gap(m(a, b), m(c, e), m(a, c), m(b, e), m(a, e), m(b, c)) > tol) return false;
  return true;
}

bool ultrametric_check(const DistanceMatrix& d, double tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.size());
  const Eigen::MatrixXd& m = d.values();
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = x + 1; y < n; ++y)
      for (Eigen::Index z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (m(x, y) > std::max(m(x, z), m(y, z)) + tol) return false;
      }
  return true;
}

}  // namespace hypertree
