#include <gtest/gtest.h>

#include <random>

#include "kingdomino/board.hpp"
#include "kingdomino/io.hpp"
#include "kingdomino/reduction.hpp"
#include "kingdomino/verify.hpp"
#include "kingdomino/witness.hpp"
#include "support.hpp"

using namespace kingdomino;

namespace {

struct Case {
  ReducedInstance r;
  PartitionSolution sol;
};

Case fig3_case() {
  const PartitionFile f = load_partition(kdtest::data_dir() / "fig3.part");
  return {build_tau(scale(f.instance, 4)), *f.solution};
}

Case minimal_case() {
  return {build_tau(scale(FourPartitionInstance({1, 1, 1, 1}, 4))), PartitionSolution{{{1, 2, 3, 4}}}};
}

BoardState replay_ok(const ReducedInstance& r, const Certificate& cert) {
  auto result = replay(r.tau, cert);
  if (auto* f = std::get_if<Failure>(&result)) {
    ADD_FAILURE() << "replay failed at " << f->index << ": " << to_string(f->reason) << " " << f->detail;
    return {};
  }
  return std::get<BoardState>(std::move(result));
}

std::int64_t bin_sum(const std::vector<std::int64_t>& sizes, const std::array<int, 4>& bin) {
  std::int64_t s = 0;
  for (int i : bin) s += sizes[i - 1];
  return s;
}

}  // namespace

TEST(Witness, FigureThreeCaptionBags) {
  const Case c = fig3_case();
  const auto& x = c.r.sizes;
  std::vector<std::vector<std::int64_t>> bags;
  for (const auto& bin : c.sol.bins) {
    std::vector<std::int64_t> bag;
    for (int i : bin) bag.push_back(x[i - 1]);
    std::sort(bag.rbegin(), bag.rend());
    bags.push_back(bag);
  }
  EXPECT_EQ(bags[0], (std::vector<std::int64_t>{72, 16, 16, 16}));
  EXPECT_EQ(bags[1], (std::vector<std::int64_t>{48, 48, 12, 12}));
  EXPECT_EQ(bags[2], (std::vector<std::int64_t>{40, 40, 24, 16}));
}

TEST(Witness, FigureThreeScoresExactlyTarget) {
  const Case c = fig3_case();
  const Certificate cert = build_witness(c.r, c.sol);
  ASSERT_EQ(cert.choices.size(), c.r.tau.size());
  const Verdict v = verify_certificate(c.r.tau, cert, c.r.s);
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.score, 1411);
  EXPECT_EQ(std::count_if(cert.choices.begin(), cert.choices.end(), is_discard), 0);
  EXPECT_FALSE(verify_certificate(c.r.tau, cert, c.r.s + 1).accepted);
}

TEST(Witness, MinimalInstanceScoresExactlyTarget) {
  const Case c = minimal_case();
  const Certificate cert = build_witness(c.r, c.sol);
  const Verdict v = verify_certificate(c.r.tau, cert, c.r.s);
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.score, 351);
  EXPECT_EQ(replay_ok(c.r, cert).discard_count(), 0u);
}

TEST(Witness, LayoutShape) {
  for (const Case& c : {minimal_case(), fig3_case()}) {
    const WitnessLayout l = make_layout(c.r);
    EXPECT_EQ(l.side, 6 * c.r.m);
    EXPECT_EQ(l.ring.size(), static_cast<std::size_t>(4 * (6 * c.r.m + 1)));
    ASSERT_EQ(l.bins.size(), static_cast<std::size_t>(c.r.m));
    for (const BinFrame& b : l.bins) {
      EXPECT_EQ(b.right_x - b.left_x, 3);
      EXPECT_EQ(b.rows, c.r.k / 4 + 2);
    }
    // Dents on the left border at heights 4, 11 and 12 above the corner row;
    // a 6-high square has no 12th row, so m = 1 moves the last two up top.
    if (c.r.m < 3) continue;
    for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(l.dents[d].x, l.square_min.x);
    EXPECT_EQ(l.dents[0].y - l.square_min.y, 4);
    EXPECT_EQ(l.dents[1].y - l.square_min.y, 11);
    EXPECT_EQ(l.dents[2].y - l.square_min.y, 12);
  }
}

TEST(Witness, TwoBinsHaveNoLayout) {
  const ReducedInstance r = build_tau(scale(FourPartitionInstance({1, 1, 1, 1, 1, 1, 1, 1}, 4)));
  EXPECT_THROW(make_layout(r), LayoutError);
  EXPECT_THROW(build_witness(r, PartitionSolution{{{1, 2, 3, 4}, {5, 6, 7, 8}}}), LayoutError);
}

TEST(Witness, RejectsInvalidSolutions) {
  const Case c = minimal_case();
  // Wrong bin count, repeated item, out-of-range item.
  EXPECT_THROW(build_witness(c.r, PartitionSolution{}), std::invalid_argument);
  EXPECT_THROW(build_witness(c.r, PartitionSolution{{{1, 1, 2, 3}}}), std::invalid_argument);
  EXPECT_THROW(build_witness(c.r, PartitionSolution{{{1, 2, 3, 5}}}), std::invalid_argument);

  // Two bins off by 28 in opposite directions.
  const FourPartitionInstance inst({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 3}, 5);
  const ScaledInstance s = scale(inst);
  const PartitionSolution off{{{1, 2, 3, 4}, {5, 6, 7, 12}, {8, 9, 10, 11}}};
  EXPECT_EQ(bin_sum(s.instance.sizes(), off.bins[0]), s.instance.k() - 28);
  EXPECT_EQ(bin_sum(s.instance.sizes(), off.bins[1]), s.instance.k() + 28);
  EXPECT_THROW(validate_solution(s.instance, off), std::invalid_argument);
  EXPECT_THROW(build_witness(build_tau(s), off), std::invalid_argument);
}

TEST(Witness, PackBinPreconditions) {
  const Case c = minimal_case();
  const WitnessLayout l = make_layout(c.r);
  EXPECT_THROW(pack_bin(l, 1, {{{1, 27}, {2, 29}, {3, 28}, {4, 28}}}), std::invalid_argument);
  EXPECT_THROW(pack_bin(l, 1, {{{1, 28}, {2, 28}, {3, 28}, {4, 30}}}), std::invalid_argument);
  const auto items = pack_bin(l, 1, {{{1, 28}, {2, 28}, {3, 28}, {4, 28}}});
  ASSERT_EQ(items.size(), 4u);
  for (const ItemPlacements& it : items) EXPECT_EQ(it.dominoes.size(), 14u);
}

TEST(Witness, PackBinUnevenItems) {
  const ReducedInstance r = build_tau(scale(FourPartitionInstance({1, 1, 1, 25}, 28)));
  const WitnessLayout l = make_layout(r);
  // (k - 3*scale, scale, scale, scale)
  const auto items = pack_bin(l, 1, {{{1, 28}, {2, 28}, {3, 28}, {4, 700}}});
  std::size_t cells = 0;
  for (const ItemPlacements& it : items) cells += 2 * it.dominoes.size();
  EXPECT_EQ(cells, static_cast<std::size_t>(r.k));
  const Certificate cert = build_witness(r, PartitionSolution{{{1, 2, 3, 4}}});
  EXPECT_TRUE(verify_certificate(r.tau, cert, r.s).accepted);
}

TEST(Witness, OccupancyAfterSquareStep) {
  for (const Case& c : {minimal_case(), fig3_case()}) {
    const Certificate cert = build_witness(c.r, c.sol);
    const std::int64_t m = c.r.m;
    const std::size_t upto = 4 + static_cast<std::size_t>(18 * m * m - 6);
    BoardState b;
    for (std::size_t i = 0; i < upto; ++i) b.play(c.r.tau[i], cert.choices[i]);
    EXPECT_EQ(static_cast<std::int64_t>(b.cells().size()) + 1, 36 * m * m - 3);
    EXPECT_EQ(c.r.tags[upto].group, Gadget::kContour);
  }
}

TEST(Witness, ZippersJoinTheArms) {
  for (const Case& c : {minimal_case(), fig3_case()}) {
    const Certificate cert = build_witness(c.r, c.sol);
    const BoardState b = replay_ok(c.r, cert);
    const std::size_t first = c.r.tau.size() - 2 * c.r.m;
    for (int j = 1; j <= c.r.m; ++j) {
      const auto& a = std::get<Placement>(cert.choices[first + 2 * (j - 1)]);
      const auto& z = std::get<Placement>(cert.choices[first + 2 * (j - 1) + 1]);
      const std::array<Position, 4> path{a.first, a.second, z.first, z.second};
      for (int t = 0; t < 3; ++t) EXPECT_TRUE(edge_adjacent(path[t], path[t + 1])) << "bin " << j;
      const auto touches = [&](Position p, int color) {
        for (Position d : kNeighborOffsets) {
          const CellSpec* n = b.at(p + d);
          if (n != nullptr && n->color.value() == color) return true;
        }
        return false;
      };
      EXPECT_TRUE(touches(path[0], 3 * j + 8)) << "bin " << j;
      EXPECT_TRUE(touches(path[3], 3 * j + 10)) << "bin " << j;
    }
  }
}

TEST(Witness, ExtractionReadsBackTheCaption) {
  const Case c = fig3_case();
  const BoardState b = replay_ok(c.r, build_witness(c.r, c.sol));
  EXPECT_EQ(normalized(extract_partition(c.r, b)), normalized(c.sol));
  EXPECT_EQ(normalized(extract_partition(c.r, b)),
            (PartitionSolution{{{1, 2, 10, 11}, {3, 4, 5, 12}, {6, 7, 8, 9}}}));
}

TEST(Witness, RandomRoundTrips) {
  std::mt19937 rng(20240521);
  int done = 0;
  for (int t = 0; t < 24; ++t) {
    const int m = (t % 2 == 0) ? 1 : 3;
    const int factor = (t % 4 < 2) ? 28 : 4;
    const std::int64_t k0 = std::uniform_int_distribution<std::int64_t>(8, 30)(rng);
    const auto [sizes, k] = kdtest::random_yes_instance(rng, m, k0);
    const auto sol = kdtest::solve_partition(sizes, k);
    ASSERT_TRUE(sol.has_value());
    const ReducedInstance r = build_tau(scale(FourPartitionInstance(sizes, k), factor));
    const Certificate cert = build_witness(r, *sol);
    const Verdict v = verify_certificate(r.tau, cert, r.s);
    ASSERT_TRUE(v.accepted) << "trial " << t;
    ASSERT_EQ(v.score, r.s);
    EXPECT_EQ(normalized(extract_partition(r, replay_ok(r, cert))), normalized(*sol)) << "trial " << t;
    ++done;
  }
  EXPECT_GE(done, 20);
}

TEST(Witness, TamperedItemGroupIsCaught) {
  const Case c = fig3_case();
  const Certificate good = build_witness(c.r, c.sol);
  for (std::size_t i = 0; i < c.r.tau.size(); ++i) {
    if (c.r.tags[i].group != Gadget::kItems) continue;
    // Shift one item's whole group one column over.
    Certificate bad = good;
    const GadgetTag tag = c.r.tags[i];
    for (std::size_t t = i; t < c.r.tau.size() && c.r.tags[t] == tag; ++t) {
      auto& p = std::get<Placement>(bad.choices[t]);
      p.first.x += 1;
      p.second.x += 1;
    }
    const Verdict v = verify_certificate(c.r.tau, bad, c.r.s);
    if (v.accepted) {
      EXPECT_THROW(extract_partition(c.r, std::get<BoardState>(replay(c.r.tau, bad))), ExtractionError);
    }
    while (i + 1 < c.r.tau.size() && c.r.tags[i + 1] == tag) ++i;
  }
}

TEST(Witness, ExtractionFailsOnForeignBoards) {
  const Case c = minimal_case();
  EXPECT_THROW(extract_partition(c.r, BoardState{}), ExtractionError);
}
