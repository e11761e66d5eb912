#include "kingdomino/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kingdomino {

FourPartitionInstance::FourPartitionInstance(std::vector<std::int64_t> sizes, std::int64_t k)
    : sizes_(std::move(sizes)), k_(k) {
  if (sizes_.empty() || sizes_.size() % 4 != 0) {
    throw std::invalid_argument("item count " + std::to_string(sizes_.size()) +
                                " is not a positive multiple of 4");
  }
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] <= 0) {
      throw std::invalid_argument("item " + std::to_string(i + 1) + " has non-positive size");
    }
  }
  const std::int64_t sum = std::accumulate(sizes_.begin(), sizes_.end(), std::int64_t{0});
  if (sum != k_ * m()) {
    throw std::invalid_argument("sizes sum to " + std::to_string(sum) + ", expected k*m = " +
                                std::to_string(k_ * m()));
  }
}

ScaledInstance scale(const FourPartitionInstance& inst, int factor) {
  if (factor < 1) throw std::invalid_argument("scale factor must be positive");
  std::vector<std::int64_t> sizes = inst.sizes();
  for (auto& x : sizes) x *= factor;
  return {FourPartitionInstance(std::move(sizes), inst.k() * factor), factor};
}

std::string to_string(Gadget g) {
  switch (g) {
    case Gadget::kGuardians:
      return "guardians";
    case Gadget::kSquare:
      return "square";
    case Gadget::kContour:
      return "contour";
    case Gadget::kGuide:
      return "guide";
    case Gadget::kArms:
      return "arms";
    case Gadget::kAnchors:
      return "anchors";
    case Gadget::kItems:
      return "items";
    case Gadget::kZippers:
      return "zippers";
  }
  return "unknown";
}

std::int64_t target_score(std::int64_t m, std::int64_t k) {
  return 72 * m * m + 54 * m + (k / 2) * (3 * m + 1) + 1;
}

ReducedInstance build_tau(const ScaledInstance& inst) {
  const FourPartitionInstance& p = inst.instance;
  if (p.k() % 4 != 0) {
    throw std::invalid_argument("bin capacity " + std::to_string(p.k()) +
                                " is not a multiple of 4");
  }
  for (int i = 0; i < p.n(); ++i) {
    if (p.sizes()[i] % 2 != 0) {
      throw std::invalid_argument("item " + std::to_string(i + 1) + " has odd size " +
                                  std::to_string(p.sizes()[i]));
    }
  }

  ReducedInstance r;
  r.m = p.m();
  r.n = p.n();
  r.k = p.k();
  r.scale = inst.scale;
  r.sizes = p.sizes();
  r.s = target_score(r.m, r.k);
  if (inst.scale < kMinSafeScale) {
    r.warnings.push_back("scale " + std::to_string(inst.scale) + " < " +
                         std::to_string(kMinSafeScale) +
                         ": anchor saturation is not guaranteed, score-s tilings may not "
                         "encode a partition");
  }

  const int m = r.m;
  const std::int64_t mm = m;
  auto emit = [&](Gadget g, int index, int c1, int k1, int c2, int k2, std::int64_t times = 1) {
    for (std::int64_t t = 0; t < times; ++t) {
      r.tau.push_back(make_domino(c1, k1, c2, k2));
      r.tags.push_back({g, index});
    }
  };

  emit(Gadget::kGuardians, 0, 1, 1, 1, 0);
  for (int c = 2; c <= 4; ++c) emit(Gadget::kGuardians, 0, c, 0, c, 0);

  emit(Gadget::kSquare, 0, 1, 0, 1, 0, 18 * mm * mm - 6);

  const auto contour = [&](int c1, int k1, int c2, int k2, std::int64_t times = 1) {
    emit(Gadget::kContour, 0, c1, k1, c2, k2, times);
  };
  contour(1, 0, 5, 1);
  contour(5, 0, 6, 1);
  contour(6, 0, 7, 1);
  contour(7, 0, 8, 1);
  contour(8, 0, 1, 0, 2);
  contour(8, 0, 2, 0);
  contour(8, 0, 9, 1);
  contour(9, 0, 9, 0, 9 * mm - 8);
  contour(9, 0, 10, 1);
  for (int c = 10; c <= 3 * m + 11; ++c) contour(c, 0, c + 1, 1);
  contour(3 * m + 12, 0, 5, 0);

  emit(Gadget::kGuide, 0, 6, 0, 7, 0, 18 * mm * mm + 12 * mm);

  for (int q = 0; q <= m; ++q) emit(Gadget::kArms, q + 1, 3 * q + 10, 0, 3 * q + 11, 0, r.k / 4 + 2);

  for (int j = 1; j <= m; ++j) emit(Gadget::kAnchors, j, 3 * j + 9, 0, r.anchor_color(), 0, 2);

  for (int i = 1; i <= r.n; ++i) {
    emit(Gadget::kItems, i, r.anchor_color(), 0, r.item_color(i), 1);
    emit(Gadget::kItems, i, r.item_color(i), 0, r.item_color(i), 0, r.sizes[i - 1] / 2 - 1);
  }

  for (int j = 1; j <= m; ++j) {
    emit(Gadget::kZippers, j, 3 * j + 8, 0, r.zipper_color(j), 1);
    emit(Gadget::kZippers, j, r.zipper_color(j), 0, 3 * j + 10, 0);
  }
  return r;
}

ReducedInstance recognize_reduced(std::span<const Domino> tau) {
  const auto fail = [](const std::string& why) {
    return std::invalid_argument("not a reduced 4-Partition sequence: " + why);
  };
  const Domino square = make_domino(1, 0, 1, 0);
  std::size_t i = 4;
  while (i < tau.size() && tau[i] == square) ++i;
  const std::int64_t squares = static_cast<std::int64_t>(i) - 4;
  int m = 1;
  while (18 * static_cast<std::int64_t>(m) * m - 6 < squares) ++m;
  if (18 * static_cast<std::int64_t>(m) * m - 6 != squares) throw fail("square group has " + std::to_string(squares) + " dominoes");
  const std::int64_t mm = m;
  i += static_cast<std::size_t>(12 * mm + 4 + 18 * mm * mm + 12 * mm);
  const Domino arm = make_domino(10, 0, 11, 0);
  std::int64_t arm_len = 0;
  while (i < tau.size() && tau[i] == arm) ++i, ++arm_len;
  if (arm_len < 3) throw fail("first arm stack missing");
  const std::int64_t k = 4 * (arm_len - 2);
  i += static_cast<std::size_t>(m * arm_len + 2 * mm);
  const int anchor = 3 * m + 13;
  std::vector<std::int64_t> sizes;
  while (i < tau.size() && tau[i].first.color.value() == anchor && tau[i].first.crowns == 0 &&
         tau[i].second.crowns == 1) {
    const Color c = tau[i].second.color;
    ++i;
    std::int64_t x = 2;
    while (i < tau.size() && tau[i] == Domino{CellSpec{c, 0}, CellSpec{c, 0}}) ++i, x += 2;
    sizes.push_back(x);
  }
  ReducedInstance r;
  try {
    r = build_tau({FourPartitionInstance(sizes, k), kMinSafeScale});
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
  if (!std::equal(r.tau.begin(), r.tau.end(), tau.begin(), tau.end())) throw fail("sequence differs from the rebuilt one");
  r.scale = 0;
  r.warnings.clear();
  return r;
}

TauStats tau_stats(const ReducedInstance& r) {
  TauStats out;
  for (std::size_t i = 0; i < r.tau.size(); ++i) {
    ++out.group_sizes[static_cast<int>(r.tags[i].group)];
    for (const CellSpec& c : {r.tau[i].first, r.tau[i].second}) {
      ColorTally& t = out.colors[c.color.value()];
      ++t.cells;
      t.crowns += c.crowns;
      out.total_crowns += c.crowns;
    }
  }
  return out;
}

std::array<std::int64_t, kGadgetCount> expected_group_sizes(int m, std::int64_t k,
                                                            const std::vector<std::int64_t>& sizes) {
  const std::int64_t mm = m;
  std::int64_t items = 0;
  for (std::int64_t x : sizes) items += x / 2;
  return {4,
          18 * mm * mm - 6,
          12 * mm + 4,
          18 * mm * mm + 12 * mm,
          (mm + 1) * (k / 4 + 2),
          2 * mm,
          items,
          2 * mm};
}

}  // namespace kingdomino
