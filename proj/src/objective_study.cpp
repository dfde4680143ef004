#include "hypertree/objective_study.hpp"

#include "hypertree/costs.hpp"
#include "hypertree/datagen.hpp"
#include "hypertree/edge_fit.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/newick.hpp"
#include "hypertree/tree.hpp"

#include <random>
#include <sstream>

namespace hypertree {

namespace {

// A later candidate must beat the incumbent by this much to replace it, so
// rounding noise cannot reorder equally good trees.
constexpr double kSelectionSlack = 1e-9;

struct Selection {
  std::size_t l2 = 0;
  std::size_t dasg = 0;
};

Selection select(const std::vector<WeightedTree>& pool, const DistanceMatrix& d) {
  Selection s;
  double best_l2 = 0.0, best_dasg = 0.0;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const double l2 = lp_cost(leaf_distance_matrix(fit_edge_weights(pool[k], d)), d, 2.0);
    // D holds dissimilarities, so a good hierarchy puts large entries under
    // large clans: the Dasgupta objective is maximized.
    const double dasg = dasgupta_cost(pool[k], d);
    if (k == 0 || l2 < best_l2 - kSelectionSlack) {
      best_l2 = l2;
      s.l2 = k;
    }
    if (k == 0 || dasg > best_dasg + kSelectionSlack) {
      best_dasg = dasg;
      s.dasg = k;
    }
  }
  return s;
}

}  // namespace

ObjectiveStudyResult compare_objectives(const ObjectiveStudyOptions& opts) {
  if (opts.n < 4 || opts.n > 16) throw ArgumentError("objective study needs n in [4, 16]");
  if (opts.trials == 0) throw ArgumentError("objective study needs at least one trial");
  if (opts.pool_size < 100) throw ArgumentError("objective study needs a pool of at least 100 trees");

  std::mt19937_64 master(opts.seed);
  std::vector<WeightedTree> pool;
  pool.reserve(opts.pool_size + 1);
  for (std::size_t k = 0; k < opts.pool_size; ++k) pool.push_back(random_binary_tree(opts.n, master(), true));

  ObjectiveStudyResult result;
  result.n = opts.n;
  result.trials = opts.trials;
  result.pool_size = opts.pool_size;
  result.seed = opts.seed;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const WeightedTree truth = random_binary_tree(opts.n, master(), true);
    const DistanceMatrix d_l2 = leaf_distance_matrix(truth);
    const DistanceMatrix d_dasg = dasgupta_measurements(truth);

    std::vector<WeightedTree> trial_pool;
    const std::vector<WeightedTree>* candidates = &pool;
    if (opts.include_truth) {
      trial_pool.reserve(pool.size() + 1);
      trial_pool.push_back(truth);
      trial_pool.insert(trial_pool.end(), pool.begin(), pool.end());
      candidates = &trial_pool;
    }

    const Selection on_l2 = select(*candidates, d_l2);
    const Selection on_dasg = select(*candidates, d_dasg);
    ObjectiveTrial row;
    row.trial = t;
    row.selected = {on_l2.l2, on_l2.dasg, on_dasg.l2, on_dasg.dasg};
    for (std::size_t c = 0; c < 4; ++c) row.distance[c] = tree_distance(truth, (*candidates)[row.selected[c]]);
    for (std::size_t c = 0; c < 4; ++c) result.mean[c] += row.distance[c];
    result.rows.push_back(row);
  }
  for (double& m : result.mean) m /= static_cast<double>(opts.trials);
  return result;
}

std::string format_objective_summary(const ObjectiveStudyResult& r) {
  std::ostringstream out;
  out << "n = " << r.n << '\n'
      << "trials = " << r.trials << '\n'
      << "pool_size = " << r.pool_size << '\n'
      << "seed = " << r.seed << '\n';
  for (std::size_t c = 0; c < 4; ++c) out << "mean." << kObjectiveColumns[c] << " = " << format_double(r.mean[c]) << '\n';
  return out.str();
}

std::string format_objective_rows(const ObjectiveStudyResult& r) {
  std::ostringstream out;
  out << "trial";
  for (const char* c : kObjectiveColumns) out << '\t' << c;
  out << '\n';
  for (const ObjectiveTrial& row : r.rows) {
    out << row.trial;
    for (double d : row.distance) out << '\t' << format_double(d);
    out << '\n';
  }
  return out.str();
}

}  // namespace hypertree
