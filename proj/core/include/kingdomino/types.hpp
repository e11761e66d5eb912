#ifndef KINGDOMINO_TYPES_HPP_
#define KINGDOMINO_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace kingdomino {

// Colors are positive integers. The tower carries no color.
class Color {
 public:
  constexpr Color() = default;
  constexpr explicit Color(int value) : value_(value) {
    if (value < 1) throw std::invalid_argument("color must be >= 1");
  }
  constexpr int value() const { return value_; }
  constexpr auto operator<=>(const Color&) const = default;

 private:
  int value_ = 1;
};

struct CellSpec {
  Color color;
  int crowns = 0;

  constexpr CellSpec() = default;
  constexpr CellSpec(Color c, int k) : color(c), crowns(k) {
    if (k < 0) throw std::invalid_argument("crowns must be >= 0");
  }
  constexpr auto operator<=>(const CellSpec&) const = default;
};

struct Domino {
  CellSpec first;
  CellSpec second;

  constexpr auto operator<=>(const Domino&) const = default;
};

// Shorthand used throughout tests and the reduction: make_domino(1, 1, 2, 0)
// is the domino whose first cell has color 1 with one crown, second color 2.
constexpr Domino make_domino(int c1, int k1, int c2, int k2) {
  return Domino{CellSpec{Color{c1}, k1}, CellSpec{Color{c2}, k2}};
}

struct Position {
  std::int32_t x = 0;
  std::int32_t y = 0;

  constexpr auto operator<=>(const Position&) const = default;
  constexpr Position operator+(Position o) const { return {x + o.x, y + o.y}; }
};

inline constexpr Position kTower{0, 0};
inline constexpr Position kNeighborOffsets[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

constexpr bool edge_adjacent(Position a, Position b) {
  const auto dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const auto dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx + dy == 1;
}

// Ordered: the domino's first cell lands on `first`, its second on `second`.
struct Placement {
  Position first;
  Position second;

  constexpr auto operator<=>(const Placement&) const = default;
};

struct Discard {
  constexpr auto operator<=>(const Discard&) const = default;
};

using Choice = std::variant<Placement, Discard>;

inline bool is_discard(const Choice& c) { return std::holds_alternative<Discard>(c); }

struct PositionHash {
  std::size_t operator()(Position p) const noexcept {
    const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x));
    const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y));
    std::uint64_t h = (ux << 32) | uy;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

std::string to_string(const Domino& d);
std::string to_string(Position p);

}  // namespace kingdomino

#endif  // KINGDOMINO_TYPES_HPP_
