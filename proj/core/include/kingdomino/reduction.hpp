#ifndef KINGDOMINO_REDUCTION_HPP_
#define KINGDOMINO_REDUCTION_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kingdomino/types.hpp"

namespace kingdomino {

// n items, m = n/4 bins of capacity k. Construction validates: n a positive
// multiple of 4, every size positive, sizes summing to k*m.
class FourPartitionInstance {
 public:
  FourPartitionInstance(std::vector<std::int64_t> sizes, std::int64_t k);

  const std::vector<std::int64_t>& sizes() const { return sizes_; }
  std::int64_t k() const { return k_; }
  int n() const { return static_cast<int>(sizes_.size()); }
  int m() const { return n() / 4; }

  bool operator==(const FourPartitionInstance&) const = default;

 private:
  std::vector<std::int64_t> sizes_;
  std::int64_t k_;
};

struct ScaledInstance {
  FourPartitionInstance instance;
  int scale = 1;
};

inline constexpr int kDefaultScale = 28;

// Anchor saturation needs items of at least this many cells; smaller scales
// still build but only the witness direction is meaningful.
inline constexpr int kMinSafeScale = 28;

ScaledInstance scale(const FourPartitionInstance& inst, int factor = kDefaultScale);

enum class Gadget { kGuardians, kSquare, kContour, kGuide, kArms, kAnchors, kItems, kZippers };
inline constexpr int kGadgetCount = 8;

std::string to_string(Gadget g);

struct GadgetTag {
  Gadget group = Gadget::kGuardians;
  // 1-based item index for kItems, bin index for kZippers, arm index p + 1 for
  // kArms and bin index for kAnchors; 0 otherwise.
  int index = 0;

  bool operator==(const GadgetTag&) const = default;
};

struct ReducedInstance {
  std::vector<Domino> tau;
  std::vector<GadgetTag> tags;  // parallel to tau
  std::int64_t s = 0;
  int m = 0;
  int n = 0;
  std::int64_t k = 0;  // scaled
  int scale = 1;
  std::vector<std::int64_t> sizes;  // scaled
  std::vector<std::string> warnings;

  int anchor_color() const { return 3 * m + 13; }
  // Items are 1-based, as are bins.
  int item_color(int i) const { return 3 * m + 13 + i; }
  int zipper_color(int j) const { return 3 * m + 13 + n + j; }
  int max_color() const { return 4 * m + 13 + n; }
};

// Rejects k not divisible by 4 or odd item sizes with std::invalid_argument.
ReducedInstance build_tau(const ScaledInstance& inst);

std::int64_t target_score(std::int64_t m, std::int64_t k);

// Inverse of build_tau: recovers m, k and the item sizes from a sequence and
// rebuilds the instance, which must reproduce tau exactly. The scale is not
// recoverable and is reported as 0. Throws std::invalid_argument otherwise.
ReducedInstance recognize_reduced(std::span<const Domino> tau);

struct ColorTally {
  std::int64_t cells = 0;
  std::int64_t crowns = 0;
  bool operator==(const ColorTally&) const = default;
};

struct TauStats {
  std::array<std::int64_t, kGadgetCount> group_sizes{};
  std::map<int, ColorTally> colors;
  std::int64_t total_crowns = 0;
};

TauStats tau_stats(const ReducedInstance& r);

// Expected group sizes from the closed forms, independent of build_tau.
std::array<std::int64_t, kGadgetCount> expected_group_sizes(int m, std::int64_t k,
                                                            const std::vector<std::int64_t>& sizes);

}  // namespace kingdomino

#endif  // KINGDOMINO_REDUCTION_HPP_
