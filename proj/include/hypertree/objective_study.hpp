#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hypertree {

// Compares tree recovery by the lp (p = 2) cost and the Dasgupta cost. Each
// trial draws a rooted ground-truth tree T, builds its path-length matrix
// D_l2 and its LCA-clan matrix D_dasg, and picks from one fixed pool of random
// rooted topologies the best tree under each cost. Recovered trees are scored
// by tree_distance to T.
struct ObjectiveStudyOptions {
  std::size_t n = 7;
  std::size_t trials = 20;
  std::size_t pool_size = 1000;
  std::uint64_t seed = 0;
  // Put each trial's ground-truth topology at the front of the pool.
  bool include_truth = false;
};

// Column order of the four distances.
inline constexpr std::array<const char*, 4> kObjectiveColumns = {
    "l2_on_l2", "dasg_on_l2", "l2_on_dasg", "dasg_on_dasg"};

struct ObjectiveTrial {
  std::size_t trial = 0;
  // d(T, T_l2(D_l2)), d(T, T_dasg(D_l2)), d(T, T_l2(D_dasg)), d(T, T_dasg(D_dasg))
  std::array<double, 4> distance{};
  // Pool positions of the selected trees, same order.
  std::array<std::size_t, 4> selected{};
};

struct ObjectiveStudyResult {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t pool_size = 0;
  std::uint64_t seed = 0;
  std::array<double, 4> mean{};
  std::vector<ObjectiveTrial> rows;
};

// Throws ArgumentError for n outside [4, 16], zero trials or a pool below 100.
ObjectiveStudyResult compare_objectives(const ObjectiveStudyOptions& opts);

// Key-value summary lines.
std::string format_objective_summary(const ObjectiveStudyResult& r);

// Tab-separated scatter rows with a header line.
std::string format_objective_rows(const ObjectiveStudyResult& r);

}  // namespace hypertree
