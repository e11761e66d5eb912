#ifndef KINGDOMINO_TESTS_SUPPORT_HPP_
#define KINGDOMINO_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "kingdomino/types.hpp"
#include "kingdomino/witness.hpp"

namespace kdtest {

using namespace kingdomino;

inline std::filesystem::path data_dir() { return KINGDOMINO_DATA_DIR; }

// The three four-domino sequences counted in the published table.
inline std::vector<Domino> table_mono() {
  return {make_domino(1, 1, 1, 0), make_domino(1, 0, 1, 0), make_domino(1, 0, 1, 0), make_domino(1, 0, 1, 0)};
}
inline std::vector<Domino> table_pairs() {
  return {make_domino(1, 1, 1, 0), make_domino(2, 1, 2, 0), make_domino(3, 1, 3, 0), make_domino(4, 1, 4, 0)};
}
inline std::vector<Domino> table_distinct() {
  return {make_domino(1, 1, 2, 1), make_domino(3, 1, 4, 1), make_domino(5, 1, 6, 1), make_domino(7, 1, 8, 1)};
}

struct TableRow {
  std::int64_t max_score;
  std::int64_t canonical;
  std::int64_t full;
};

// Published values, column by column.
inline const std::array<std::array<TableRow, 4>, 3> kTable = {{
    {{{2, 2, 24}, {4, 19, 752}, {6, 253, 35448}, {8, 3529, 2176064}}},
    {{{2, 2, 24}, {4, 13, 400}, {6, 63, 4032}, {8, 141, 18048}}},
    {{{2, 4, 24}, {4, 52, 400}, {6, 504, 4032}, {8, 2256, 18048}}},
}};

inline std::vector<Domino> table_sequence(int column) {
  switch (column) {
    case 0:
      return table_mono();
    case 1:
      return table_pairs();
    default:
      return table_distinct();
  }
}

// Plain backtracking 4-Partition solver: first solution in index order, or
// nullopt. Independent of the witness code on purpose.
inline std::optional<PartitionSolution> solve_partition(const std::vector<std::int64_t>& sizes, std::int64_t k) {
  const int n = static_cast<int>(sizes.size());
  if (n % 4 != 0) return std::nullopt;
  const int m = n / 4;
  std::vector<int> bin_of(n, -1);
  std::vector<std::int64_t> load(m, 0);
  std::vector<int> count(m, 0);
  std::function<bool(int)> place = [&](int i) {
    if (i == n) return true;
    for (int j = 0; j < m; ++j) {
      if (count[j] == 4 || load[j] + sizes[i] > k) continue;
      if (count[j] == 3 && load[j] + sizes[i] != k) continue;
      bin_of[i] = j;
      load[j] += sizes[i];
      ++count[j];
      if (place(i + 1)) return true;
      --count[j];
      load[j] -= sizes[i];
      // Empty bins are interchangeable.
      if (count[j] == 0) break;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  PartitionSolution sol;
  sol.bins.resize(m);
  std::vector<int> fill(m, 0);
  for (int i = 0; i < n; ++i) sol.bins[bin_of[i]][fill[bin_of[i]]++] = i + 1;
  return sol;
}

// Random yes-instance: m bins of capacity k, each split into four positive
// parts, items shuffled.
inline std::pair<std::vector<std::int64_t>, std::int64_t> random_yes_instance(std::mt19937& rng, int m,
                                                                                std::int64_t k) {
  std::vector<std::int64_t> sizes;
  for (int j = 0; j < m; ++j) {
    std::uniform_int_distribution<std::int64_t> cut(1, k - 1);
    std::array<std::int64_t, 5> cuts{0, 0, 0, 0, k};
    do {
      for (int t = 1; t <= 3; ++t) cuts[t] = cut(rng);
      std::sort(cuts.begin() + 1, cuts.begin() + 4);
    } while (cuts[1] == cuts[2] || cuts[2] == cuts[3]);
    for (int t = 0; t < 4; ++t) sizes.push_back(cuts[t + 1] - cuts[t]);
  }
  std::shuffle(sizes.begin(), sizes.end(), rng);
  return {sizes, k};
}

inline std::vector<Domino> random_sequence(std::mt19937& rng, int length, int colors, int max_crowns) {
  std::uniform_int_distribution<int> color(1, colors), crown(0, max_crowns);
  std::vector<Domino> tau;
  for (int i = 0; i < length; ++i) tau.push_back(make_domino(color(rng), crown(rng), color(rng), crown(rng)));
  return tau;
}

}  // namespace kdtest

#endif  // KINGDOMINO_TESTS_SUPPORT_HPP_
