#ifndef KINGDOMINO_BOARD_HPP_
#define KINGDOMINO_BOARD_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kingdomino/types.hpp"

namespace kingdomino {

enum class Violation {
  kOverlap,         // a target position is already occupied
  kNoColorMatch,    // neither cell touches its color or the tower
  kIllegalDiscard,  // discard while some placement was legal
  kMalformed,       // cells not edge-adjacent, or a cell on the tower
};

std::string to_string(Violation v);

class RuleViolation : public std::runtime_error {
 public:
  RuleViolation(Violation v, const std::string& what)
      : std::runtime_error(what), violation_(v) {}
  Violation violation() const { return violation_; }

 private:
  Violation violation_;
};

struct HistoryEntry {
  Domino domino;
  Choice choice;

  bool operator==(const HistoryEntry&) const = default;
};

// A K-tiling under construction: the tower at the origin plus every colored
// cell placed so far. Plain value type; copies are independent.
class BoardState {
 public:
  using CellMap = std::unordered_map<Position, CellSpec, PositionHash>;

  BoardState() = default;

  // True for the tower and for every placed cell.
  bool occupied(Position p) const { return p == kTower || cells_.contains(p); }

  // Cell at `p`, or nullptr when `p` is empty or the tower.
  const CellSpec* at(Position p) const {
    auto it = cells_.find(p);
    return it == cells_.end() ? nullptr : &it->second;
  }

  const CellMap& cells() const { return cells_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  std::size_t placed_count() const { return cells_.size() / 2; }
  std::size_t discard_count() const { return history_.size() - placed_count(); }

  // Plays one domino in place. Throws RuleViolation when the choice breaks
  // the placement rules; the board is left untouched in that case.
  void play(const Domino& d, const Choice& c);

  // Cells sorted by position, for deterministic comparison and output.
  std::vector<std::pair<Position, CellSpec>> sorted_cells() const;

  friend bool operator==(const BoardState& a, const BoardState& b) {
    return a.cells_ == b.cells_ && a.history_ == b.history_;
  }

 private:
  CellMap cells_;
  std::vector<HistoryEntry> history_;
};

// Whether a cell of the given color placed at `p` would match: some edge
// neighbour is the tower or an already placed cell of the same color.
bool cell_matches(const BoardState& board, Position p, Color color);

// nullopt when `p` is a legal placement of `d` on `board`.
std::optional<Violation> check_placement(const BoardState& board, const Domino& d,
                                         const Placement& p);

// Every legal ordered placement, sorted. Only positions on the frontier of
// the occupied area are examined.
std::vector<Placement> legal_placements(const BoardState& board, const Domino& d);

bool has_legal_placement(const BoardState& board, const Domino& d);

BoardState apply(const BoardState& board, const Domino& d, const Placement& p);
BoardState step(const BoardState& board, const Domino& d, const Choice& c);

struct Region {
  Color color;
  std::vector<Position> cell_positions;  // sorted
  int crowns = 0;

  std::int64_t value() const {
    return static_cast<std::int64_t>(cell_positions.size()) * crowns;
  }
  bool operator==(const Region&) const = default;
};

// Maximal monochromatic edge-connected components, ordered top to bottom
// (largest y first) then left to right.
std::vector<Region> regions(const BoardState& board);

// Same partition computed with a disjoint-set forest instead of flood fill.
std::vector<Region> regions_union_find(const BoardState& board);

std::int64_t score(const BoardState& board);

// Sum over colors of (cells of that color) x (crowns on that color).
std::int64_t upper_bound(std::span<const Domino> tau);

// Replays a choice list from the empty board.
BoardState replay_history(std::span<const HistoryEntry> history);

}  // namespace kingdomino

#endif  // KINGDOMINO_BOARD_HPP_
