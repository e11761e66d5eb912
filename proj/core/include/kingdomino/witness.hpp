#ifndef KINGDOMINO_WITNESS_HPP_
#define KINGDOMINO_WITNESS_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kingdomino/board.hpp"
#include "kingdomino/reduction.hpp"
#include "kingdomino/types.hpp"
#include "kingdomino/verify.hpp"

namespace kingdomino {

class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No frame exists for these parameters, or an intended placement is illegal.
class LayoutError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

class PackingError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

class ExtractionError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

// bins[j] holds the four 1-based item indices of bin j + 1.
struct PartitionSolution {
  std::vector<std::array<int, 4>> bins;
  bool operator==(const PartitionSolution&) const = default;
};

// Throws std::invalid_argument unless sol partitions 1..n into bins of four
// items summing to k.
void validate_solution(const FourPartitionInstance& inst, const PartitionSolution& sol);

// Bins sorted internally and then among themselves.
PartitionSolution normalized(PartitionSolution sol);

struct BinFrame {
  std::int32_t left_x = 0;   // leftmost of the four columns
  std::int32_t right_x = 0;  // rightmost
  std::int32_t top_y = 0;    // first row below the contour
  std::int32_t rows = 0;     // k/4 + 2; the last row is left for the zippers
};

// All coordinates absolute (tower at the origin).
struct WitnessLayout {
  int m = 0;
  std::int32_t side = 0;  // 6m
  Position square_min;    // lower-left interior cell
  std::array<Position, 3> dents;
  Position contour_start;  // first contour cell, left of the first dent
  Position guide_step;     // offset between consecutive guide dominoes
  // Clockwise ring around the square starting at contour_start.
  std::vector<Position> ring;
  std::vector<BinFrame> bins;
};

// Throws LayoutError for m = 2: the second and third dents would fall on the
// top-left corner of the ring, where no cell of the square is adjacent.
WitnessLayout make_layout(const ReducedInstance& r);

struct ItemPlacements {
  int item = 0;  // 1-based
  std::vector<Placement> dominoes;  // in sequence order, anchor domino first
};

// Packs four items (1-based index, scaled size) into bin `bin` (1-based).
// Items are returned in increasing index order, which is the order they are
// played in.
std::vector<ItemPlacements> pack_bin(const WitnessLayout& layout, int bin,
                                     std::array<std::pair<int, std::int64_t>, 4> items);

// Choice vector with no discards whose replay scores exactly r.s. Verified
// before returning; throws LayoutError or PackingError otherwise.
Certificate build_witness(const ReducedInstance& r, const PartitionSolution& sol);

// Reads the partition back from a board: each item group is assigned to the
// bin whose anchor component its anchor-colored cell belongs to.
PartitionSolution extract_partition(const ReducedInstance& r, const BoardState& board);

}  // namespace kingdomino

#endif  // KINGDOMINO_WITNESS_HPP_
