#include "kingdomino/symmetry.hpp"

namespace kingdomino {

BoardState transform(const BoardState& board, int g) {
  BoardState out;
  for (const HistoryEntry& h : board.history()) {
    if (const auto* p = std::get_if<Placement>(&h.choice)) {
      out.play(h.domino, transform(*p, g));
    } else {
      out.play(h.domino, h.choice);
    }
  }
  return out;
}

}  // namespace kingdomino
