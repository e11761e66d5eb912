#ifndef KINGDOMINO_ENUMERATE_HPP_
#define KINGDOMINO_ENUMERATE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kingdomino/board.hpp"
#include "kingdomino/types.hpp"

namespace kingdomino {

// Board shape and colors with crowns and domino boundaries erased, reduced to
// the lexicographically smallest image under the eight origin-fixing
// symmetries.
class CanonicalKey {
 public:
  struct Cell {
    std::int32_t x;
    std::int32_t y;
    int color;
    auto operator<=>(const Cell&) const = default;
  };

  CanonicalKey() = default;
  explicit CanonicalKey(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  const std::vector<Cell>& cells() const { return cells_; }
  auto operator<=>(const CanonicalKey&) const = default;

 private:
  std::vector<Cell> cells_;
};

CanonicalKey canonical_key(const BoardState& board);

struct CountReport {
  int prefix_length = 0;
  std::int64_t max_score = 0;
  std::int64_t canonical_count = 0;
  std::int64_t full_count = 0;

  bool operator==(const CountReport&) const = default;
};

// How play-outs are tallied in CountReport::full_count.
enum class CountConvention {
  // One per choice vector: distinct ordered placements are distinct.
  kChoiceVectors,
  // As above, but the two orderings of a domino whose cells are identical
  // (same color and crowns) count once.
  kSymmetricDedupe,
  // One per generation route: a placement counts once for each of its cells
  // that matches (touches its color or the tower).
  kAnchorRoutes,
};

struct SearchOptions {
  // Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned jobs = 1;
  // Branch-and-bound pruning on the per-color cells x crowns bound.
  bool prune = true;
  CountConvention convention = CountConvention::kChoiceVectors;
};

// Depth-first traversal of every play-out of tau. Each leaf is visited once,
// serially, in lexicographic choice order. Returns the number of leaves.
std::int64_t enumerate_playouts(std::span<const Domino> tau,
                                const std::function<void(const BoardState&)>& visit);

// Leaf count only, without materializing boards.
std::int64_t count_playouts(std::span<const Domino> tau, const SearchOptions& opts = {});

std::int64_t max_score(std::span<const Domino> tau, const SearchOptions& opts = {});

// Max score, number of play-outs attaining it, and number of distinct
// canonical keys among them.
CountReport count_max_score(std::span<const Domino> tau, const SearchOptions& opts = {});

// One report per prefix length 1..|tau|.
std::vector<CountReport> count_table(std::span<const Domino> tau,
                                     const SearchOptions& opts = {});

}  // namespace kingdomino

#endif  // KINGDOMINO_ENUMERATE_HPP_
