#include <gtest/gtest.h>

#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "kingdomino/board.hpp"
#include "kingdomino/io.hpp"
#include "kingdomino/reduction.hpp"
#include "support.hpp"

using namespace kingdomino;

namespace {

const std::vector<std::int64_t> kFig3Sizes{3, 3, 4, 4, 4, 4, 6, 10, 10, 12, 12, 18};

FourPartitionInstance fig3() { return FourPartitionInstance(kFig3Sizes, 30); }
FourPartitionInstance minimal() { return FourPartitionInstance({1, 1, 1, 1}, 4); }

// Group sizes straight from the construction listing, written out by hand.
std::array<std::int64_t, kGadgetCount> oracle_groups(std::int64_t m, std::int64_t k,
                                                     const std::vector<std::int64_t>& sizes) {
  std::int64_t items = 0;
  for (std::int64_t x : sizes) items += 1 + (x / 2 - 1);
  return {4, 18 * m * m - 6, 12 * m + 4, 18 * m * m + 12 * m, (m + 1) * (k / 4 + 2), 2 * m, items, 2 * m};
}

std::int64_t sum(const std::array<std::int64_t, kGadgetCount>& a) {
  return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

// Ring of an a x b rectangle built cell by cell: every cell outside the
// rectangle that touches it by an edge or a corner.
std::set<Position> rectangle_ring(int a, int b) {
  std::set<Position> ring;
  for (int x = -1; x <= a; ++x) {
    for (int y = -1; y <= b; ++y) {
      if (x < 0 || y < 0 || x >= a || y >= b) ring.insert({x, y});
    }
  }
  return ring;
}

// Cells enclosed by `ring`: flood the complement from outside its bounding
// box and count what is left.
std::int64_t enclosed_area(const std::set<Position>& ring) {
  int x0 = INT32_MAX, x1 = INT32_MIN, y0 = INT32_MAX, y1 = INT32_MIN;
  for (Position p : ring) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  --x0, --y0, ++x1, ++y1;
  std::set<Position> outside{{x0, y0}};
  std::queue<Position> todo;
  todo.push({x0, y0});
  while (!todo.empty()) {
    const Position p = todo.front();
    todo.pop();
    for (Position d : {Position{1, 0}, Position{-1, 0}, Position{0, 1}, Position{0, -1}}) {
      const Position q = p + d;
      if (q.x < x0 || q.x > x1 || q.y < y0 || q.y > y1) continue;
      if (ring.contains(q) || outside.contains(q)) continue;
      outside.insert(q);
      todo.push(q);
    }
  }
  const std::int64_t box = std::int64_t{x1 - x0 + 1} * (y1 - y0 + 1);
  return box - static_cast<std::int64_t>(ring.size()) - static_cast<std::int64_t>(outside.size());
}

}  // namespace

TEST(Instance, RejectsBadInstances) {
  EXPECT_THROW(FourPartitionInstance({1, 1, 1, 1, 1}, 5), std::invalid_argument);
  EXPECT_THROW(FourPartitionInstance({}, 0), std::invalid_argument);
  EXPECT_THROW(FourPartitionInstance({1, 1, 1, 2}, 4), std::invalid_argument);
  EXPECT_THROW(FourPartitionInstance({0, 2, 1, 1}, 4), std::invalid_argument);
  EXPECT_THROW(FourPartitionInstance({-1, 3, 1, 1}, 4), std::invalid_argument);
  EXPECT_NO_THROW(fig3());
}

TEST(Scale, MultipliesSizesAndCapacity) {
  const ScaledInstance s = scale(fig3(), 4);
  EXPECT_EQ(s.instance.k(), 120);
  EXPECT_EQ(s.instance.sizes(), (std::vector<std::int64_t>{12, 12, 16, 16, 16, 16, 24, 40, 40, 48, 48, 72}));
  EXPECT_EQ(scale(fig3(), 1).instance, fig3());
  const ScaledInstance t = scale(minimal(), 28);
  EXPECT_EQ(t.instance.k(), 112);
  EXPECT_EQ(t.instance.sizes(), (std::vector<std::int64_t>{28, 28, 28, 28}));
  EXPECT_THROW(scale(minimal(), 0), std::invalid_argument);
}

TEST(Reduction, TargetScoreFormula) {
  EXPECT_EQ(target_score(3, 120), 1411);
  EXPECT_EQ(target_score(1, 112), 351);
  EXPECT_EQ(target_score(1, 0), 127);
}

TEST(Reduction, FigureThreeInstance) {
  const ReducedInstance r = build_tau(scale(fig3(), 4));
  EXPECT_EQ(r.m, 3);
  EXPECT_EQ(r.k, 120);
  EXPECT_EQ(r.anchor_color(), 22);
  EXPECT_EQ(r.tau.size(), 718u);
  EXPECT_EQ(r.s, 1411);
  const std::array<std::int64_t, kGadgetCount> expected{4, 156, 40, 198, 128, 6, 180, 6};
  EXPECT_EQ(tau_stats(r).group_sizes, expected);
  EXPECT_FALSE(r.warnings.empty());  // scale 4 is below the safe scale
}

TEST(Reduction, MinimalInstanceAtDefaultScale) {
  const ReducedInstance r = build_tau(scale(minimal()));
  EXPECT_EQ(r.k, 112);
  EXPECT_EQ(r.tau.size(), 182u);
  EXPECT_EQ(r.s, 351);
  const std::array<std::int64_t, kGadgetCount> expected{4, 12, 16, 30, 60, 2, 56, 2};
  EXPECT_EQ(tau_stats(r).group_sizes, expected);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Reduction, GroupSizesMatchOracleAcrossParameters) {
  for (int m = 1; m <= 20; ++m) {
    for (std::int64_t k : {28, 56, 84, 112}) {
      std::vector<std::int64_t> sizes(4 * m, k / 4);
      if (k % 8 != 0) {
        // keep sizes even: shift 2 between neighbours
        for (int i = 0; i + 1 < 4 * m; i += 2) sizes[i] -= 1, sizes[i + 1] += 1;
      }
      for (std::int64_t& x : sizes) ASSERT_EQ(x % 2, 0);
      const ReducedInstance r = build_tau({FourPartitionInstance(sizes, k), 1});
      const auto oracle = oracle_groups(m, k, sizes);
      ASSERT_EQ(tau_stats(r).group_sizes, oracle) << "m=" << m << " k=" << k;
      ASSERT_EQ(expected_group_sizes(m, k, sizes), oracle);
      ASSERT_EQ(static_cast<std::int64_t>(r.tau.size()), sum(oracle));
      ASSERT_EQ(oracle[2], 12 * m + 4);
      ASSERT_EQ(r.s, target_score(m, k));
      ASSERT_EQ(r.s, upper_bound(r.tau)) << "m=" << m << " k=" << k;
    }
  }
}

TEST(Reduction, ColorInventoryAndCrowns) {
  const ReducedInstance r = build_tau(scale(minimal()));
  const TauStats st = tau_stats(r);
  EXPECT_EQ(st.colors.begin()->first, 1);
  EXPECT_EQ(st.colors.rbegin()->first, r.max_color());
  EXPECT_EQ(st.group_sizes[3], 18 + 12);
  // Colors 2, 3, 4 and the anchor color never carry a crown.
  for (int c : {2, 3, 4, r.anchor_color()}) EXPECT_EQ(st.colors.at(c).crowns, 0) << c;
  std::int64_t crowns = 0, cells = 0;
  for (const Domino& d : r.tau) crowns += d.first.crowns + d.second.crowns, cells += 2;
  EXPECT_EQ(st.total_crowns, crowns);
  std::int64_t tallied = 0;
  for (const auto& [c, t] : st.colors) tallied += t.cells;
  EXPECT_EQ(tallied, cells);
}

TEST(Reduction, OccupancyAfterSquareStep) {
  for (int m = 1; m <= 6; ++m) {
    // tower + guardians + square dominoes
    EXPECT_EQ(1 + 2 * 4 + 2 * (18 * m * m - 6), 36 * m * m - 3);
  }
}

TEST(Reduction, RejectsUndivisibleInstances) {
  // k = 30 is not a multiple of 4 without scaling.
  EXPECT_THROW(build_tau({fig3(), 1}), std::invalid_argument);
  // Odd item sizes.
  EXPECT_THROW(build_tau({FourPartitionInstance({1, 1, 3, 3}, 8), 1}), std::invalid_argument);
  EXPECT_NO_THROW(build_tau(scale(FourPartitionInstance({1, 1, 3, 3}, 8), 2)));
}

TEST(Reduction, DeterministicSerialization) {
  const auto render = [] {
    std::ostringstream out;
    write_reduced(out, build_tau(scale(fig3(), 4)));
    return out.str();
  };
  const std::string a = render();
  EXPECT_EQ(a, render());
  EXPECT_NE(a.find("# s=1411\n"), std::string::npos);
}

TEST(Reduction, RecognizeRebuildsTheInstance) {
  for (const auto& inst : {fig3(), minimal()}) {
    const ReducedInstance r = build_tau(scale(inst));
    const ReducedInstance back = recognize_reduced(r.tau);
    EXPECT_EQ(back.tau, r.tau);
    EXPECT_EQ(back.sizes, r.sizes);
    EXPECT_EQ(back.k, r.k);
    EXPECT_EQ(back.m, r.m);
    EXPECT_EQ(back.s, r.s);
  }
  // Sequences built below the safe scale are recognized too.
  EXPECT_EQ(recognize_reduced(build_tau(scale(fig3(), 4)).tau).s, 1411);
  auto tau = build_tau(scale(minimal())).tau;
  tau.pop_back();
  EXPECT_THROW(recognize_reduced(tau), std::invalid_argument);
  EXPECT_THROW(recognize_reduced(kdtest::table_pairs()), std::invalid_argument);
}

TEST(Reduction, GuideOutnumbersColorOneRoom) {
  // The guide dominoes cannot all fit inside the color-1 region plus the contour.
  for (std::int64_t m = 1; m <= 1000; ++m) {
    EXPECT_GT(18 * m * m + 12 * m, (18 * m * m - 6) + 2 * (6 * m + 1));
  }
}

TEST(Reduction, SquareMaximizesAreaInsideTheRing) {
  for (int m = 1; m <= 6; ++m) {
    const std::size_t ring_cells = 4 * (6 * m + 1);
    std::int64_t best = -1;
    std::pair<int, int> arg{0, 0};
    for (int a = 1; a < static_cast<int>(ring_cells); ++a) {
      for (int b = 1; b < static_cast<int>(ring_cells); ++b) {
        const auto ring = rectangle_ring(a, b);
        if (ring.size() > ring_cells) break;  // rings only grow with b
        if (ring.size() != ring_cells) continue;
        const std::int64_t area = enclosed_area(ring);
        ASSERT_EQ(area, std::int64_t{a} * b);
        if (area > best) best = area, arg = {a, b};
      }
    }
    EXPECT_EQ(best, 36 * m * m) << "m=" << m;
    EXPECT_EQ(arg, std::make_pair(6 * m, 6 * m));
  }
}
