#ifndef KINGDOMINO_SYMMETRY_HPP_
#define KINGDOMINO_SYMMETRY_HPP_

#include "kingdomino/board.hpp"
#include "kingdomino/types.hpp"

namespace kingdomino {

inline constexpr int kDihedralOrder = 8;

// The eight symmetries of the square lattice fixing the origin: g in 0..3
// rotates by g quarter turns, g in 4..7 mirrors x first and then rotates.
constexpr Position transform(Position p, int g) {
  if (g >= 4) p = Position{-p.x, p.y};
  switch (g & 3) {
    case 1:
      return {-p.y, p.x};
    case 2:
      return {-p.x, -p.y};
    case 3:
      return {p.y, -p.x};
    default:
      return p;
  }
}

constexpr Placement transform(const Placement& p, int g) {
  return {transform(p.first, g), transform(p.second, g)};
}

// Image of a whole play-out under g: every placement is mapped, discards stay.
BoardState transform(const BoardState& board, int g);

}  // namespace kingdomino

#endif  // KINGDOMINO_SYMMETRY_HPP_
