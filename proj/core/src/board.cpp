#include "kingdomino/board.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kingdomino {

std::string to_string(const Domino& d) {
  std::ostringstream out;
  out << '[' << d.first.color.value();
  if (d.first.crowns) out << '*' << d.first.crowns;
  out << '|' << d.second.color.value();
  if (d.second.crowns) out << '*' << d.second.crowns;
  out << ']';
  return out.str();
}

std::string to_string(Position p) {
  std::ostringstream out;
  out << '(' << p.x << ',' << p.y << ')';
  return out.str();
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kOverlap:
      return "overlap";
    case Violation::kNoColorMatch:
      return "no-color-match";
    case Violation::kIllegalDiscard:
      return "illegal-discard";
    case Violation::kMalformed:
      return "malformed";
  }
  return "unknown";
}

bool cell_matches(const BoardState& board, Position p, Color color) {
  for (Position off : kNeighborOffsets) {
    const Position q = p + off;
    if (q == kTower) return true;
    const CellSpec* c = board.at(q);
    if (c != nullptr && c->color == color) return true;
  }
  return false;
}

std::optional<Violation> check_placement(const BoardState& board, const Domino& d,
                                         const Placement& p) {
  if (!edge_adjacent(p.first, p.second) || p.first == kTower || p.second == kTower) {
    return Violation::kMalformed;
  }
  if (board.occupied(p.first) || board.occupied(p.second)) return Violation::kOverlap;
  if (!cell_matches(board, p.first, d.first.color) &&
      !cell_matches(board, p.second, d.second.color)) {
    return Violation::kNoColorMatch;
  }
  return std::nullopt;
}

namespace {

// Empty positions edge-adjacent to the tower or to a placed cell.
std::vector<Position> frontier(const BoardState& board) {
  std::vector<Position> out;
  auto visit = [&](Position p) {
    for (Position off : kNeighborOffsets) {
      const Position q = p + off;
      if (!board.occupied(q)) out.push_back(q);
    }
  };
  visit(kTower);
  for (const auto& [pos, cell] : board.cells()) visit(pos);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Placement> legal_placements(const BoardState& board, const Domino& d) {
  // A legal placement has a matching cell, and a matching cell always sits on
  // the frontier; pairing each frontier position with its empty neighbours
  // therefore covers every candidate.
  std::vector<Placement> out;
  for (Position a : frontier(board)) {
    const bool first_ok = cell_matches(board, a, d.first.color);
    const bool second_ok = cell_matches(board, a, d.second.color);
    if (!first_ok && !second_ok) continue;
    for (Position off : kNeighborOffsets) {
      const Position b = a + off;
      if (board.occupied(b)) continue;
      if (first_ok) out.push_back({a, b});
      if (second_ok) out.push_back({b, a});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has_legal_placement(const BoardState& board, const Domino& d) {
  for (Position a : frontier(board)) {
    if (!cell_matches(board, a, d.first.color) && !cell_matches(board, a, d.second.color)) {
      continue;
    }
    for (Position off : kNeighborOffsets) {
      if (!board.occupied(a + off)) return true;
    }
  }
  return false;
}

void BoardState::play(const Domino& d, const Choice& c) {
  if (const auto* p = std::get_if<Placement>(&c)) {
    if (auto v = check_placement(*this, d, *p)) {
      throw RuleViolation(*v, "illegal placement of " + to_string(d) + " at " +
                                  to_string(p->first) + "," + to_string(p->second) +
                                  ": " + to_string(*v));
    }
    cells_.emplace(p->first, d.first);
    cells_.emplace(p->second, d.second);
  } else if (has_legal_placement(*this, d)) {
    throw RuleViolation(Violation::kIllegalDiscard,
                        "domino " + to_string(d) + " can be placed and must not be discarded");
  }
  history_.push_back({d, c});
}

std::vector<std::pair<Position, CellSpec>> BoardState::sorted_cells() const {
  std::vector<std::pair<Position, CellSpec>> out(cells_.begin(), cells_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

BoardState apply(const BoardState& board, const Domino& d, const Placement& p) {
  BoardState next = board;
  next.play(d, p);
  return next;
}

BoardState step(const BoardState& board, const Domino& d, const Choice& c) {
  BoardState next = board;
  next.play(d, c);
  return next;
}

namespace {

void finish_regions(std::vector<Region>& out) {
  for (auto& r : out) std::sort(r.cell_positions.begin(), r.cell_positions.end());
  // Reading order: the region whose highest row is topmost comes first; ties
  // go to the region reaching further left on that row.
  auto key = [](const Region& r) {
    std::int32_t top = r.cell_positions.front().y;
    for (Position p : r.cell_positions) top = std::max(top, p.y);
    std::int32_t left = 0;
    bool first = true;
    for (Position p : r.cell_positions) {
      if (p.y == top && (first || p.x < left)) {
        left = p.x;
        first = false;
      }
    }
    return std::pair{-top, left};
  };
  std::sort(out.begin(), out.end(),
            [&](const Region& a, const Region& b) { return key(a) < key(b); });
}

}  // namespace

std::vector<Region> regions(const BoardState& board) {
  std::vector<Region> out;
  std::unordered_map<Position, bool, PositionHash> seen;
  seen.reserve(board.cells().size());
  for (const auto& [start, spec] : board.sorted_cells()) {
    if (seen[start]) continue;
    Region r{spec.color, {}, 0};
    std::vector<Position> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const Position p = stack.back();
      stack.pop_back();
      r.cell_positions.push_back(p);
      r.crowns += board.at(p)->crowns;
      for (Position off : kNeighborOffsets) {
        const Position q = p + off;
        const CellSpec* c = board.at(q);
        if (c == nullptr || c->color != spec.color) continue;
        bool& s = seen[q];
        if (!s) {
          s = true;
          stack.push_back(q);
        }
      }
    }
    out.push_back(std::move(r));
  }
  finish_regions(out);
  return out;
}

std::vector<Region> regions_union_find(const BoardState& board) {
  const auto cells = board.sorted_cells();
  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto index_of = [&](Position p) -> std::optional<std::size_t> {
    auto it = std::lower_bound(cells.begin(), cells.end(), p,
                               [](const auto& e, Position q) { return e.first < q; });
    if (it == cells.end() || it->first != p) return std::nullopt;
    return static_cast<std::size_t>(it - cells.begin());
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    // Right and up neighbours suffice to visit every adjacent pair once.
    for (Position off : {Position{1, 0}, Position{0, 1}}) {
      auto j = index_of(cells[i].first + off);
      if (j && cells[*j].second.color == cells[i].second.color) {
        parent[find(i)] = find(*j);
      }
    }
  }
  std::map<std::size_t, Region> by_root;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Region& r = by_root[find(i)];
    r.color = cells[i].second.color;
    r.cell_positions.push_back(cells[i].first);
    r.crowns += cells[i].second.crowns;
  }
  std::vector<Region> out;
  for (auto& [root, r] : by_root) out.push_back(std::move(r));
  finish_regions(out);
  return out;
}

std::int64_t score(const BoardState& board) {
  std::int64_t total = 0;
  for (const Region& r : regions(board)) total += r.value();
  return total;
}

std::int64_t upper_bound(std::span<const Domino> tau) {
  std::map<int, std::pair<std::int64_t, std::int64_t>> tally;  // color -> (cells, crowns)
  for (const Domino& d : tau) {
    for (const CellSpec& c : {d.first, d.second}) {
      auto& [cells, crowns] = tally[c.color.value()];
      cells += 1;
      crowns += c.crowns;
    }
  }
  std::int64_t total = 0;
  for (const auto& [color, t] : tally) total += t.first * t.second;
  return total;
}

BoardState replay_history(std::span<const HistoryEntry> history) {
  BoardState board;
  for (const HistoryEntry& h : history) board.play(h.domino, h.choice);
  return board;
}

}  // namespace kingdomino
