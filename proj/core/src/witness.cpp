#include "kingdomino/witness.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace kingdomino {

namespace {

constexpr std::int64_t kSearchBudget = 2'000'000;

using PosSet = std::unordered_set<Position, PositionHash>;

// ---- ring and square, in coordinates relative to the square's lower-left cell

std::vector<Position> make_ring(std::int32_t s) {
  std::vector<Position> ring;
  for (std::int32_t y = 4; y <= s; ++y) ring.push_back({-1, y});
  for (std::int32_t x = 0; x <= s; ++x) ring.push_back({x, s});
  for (std::int32_t y = s - 1; y >= -1; --y) ring.push_back({s, y});
  for (std::int32_t x = s - 1; x >= -1; --x) ring.push_back({x, -1});
  for (std::int32_t y = 0; y <= 3; ++y) ring.push_back({-1, y});
  return ring;
}

// Inward normal of a non-corner ring cell.
std::optional<Position> inward(Position p, std::int32_t s) {
  const bool vx = p.x == -1 || p.x == s;
  const bool vy = p.y == -1 || p.y == s;
  if (vx == vy) return std::nullopt;
  if (p.x == -1) return Position{1, 0};
  if (p.x == s) return Position{-1, 0};
  if (p.y == -1) return Position{0, 1};
  return Position{0, -1};
}

Position neg(Position p) { return {-p.x, -p.y}; }
Position sub(Position a, Position b) { return {a.x - b.x, a.y - b.y}; }

// Perfect domino tiling of `cells` via augmenting paths, or nullopt.
std::optional<std::vector<std::pair<Position, Position>>> tile(const std::vector<Position>& cells) {
  std::unordered_map<Position, int, PositionHash> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = static_cast<int>(i);
  std::vector<int> left;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (((cells[i].x + cells[i].y) & 1) == 0) left.push_back(static_cast<int>(i));
  }
  if (left.size() * 2 != cells.size()) return std::nullopt;
  std::vector<int> match(cells.size(), -1);
  std::vector<int> seen(cells.size(), -1);
  std::function<bool(int, int)> augment = [&](int u, int stamp) -> bool {
    for (Position d : kNeighborOffsets) {
      auto it = index.find(cells[u] + d);
      if (it == index.end()) continue;
      const int v = it->second;
      if (seen[v] == stamp) continue;
      seen[v] = stamp;
      if (match[v] < 0 || augment(match[v], stamp)) {
        match[v] = u;
        match[u] = v;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!augment(left[i], static_cast<int>(i))) return std::nullopt;
  }
  std::vector<std::pair<Position, Position>> out;
  for (int u : left) out.emplace_back(cells[u], cells[match[u]]);
  return out;
}

// ---- bin packing, in bin-local coordinates (column 1..4, row 1..rows)

struct Local {
  int c = 0;
  int r = 0;
};

struct PairPath {
  int from = 0;  // column whose top starts the path
  int to = 0;    // column whose top ends it
  std::vector<Local> cells;  // rect-local rows
};

void column(std::vector<Local>& out, int c, int r0, int r1) {
  const int step = r1 >= r0 ? 1 : -1;
  for (int r = r0;; r += step) {
    out.push_back({c, r});
    if (r == r1) break;
  }
}

// {1,2} and {3,4}: left path 2h+2g cells, right 2h-2g.
std::array<PairPath, 2> family_split(int h, int g) {
  PairPath left{1, 2, {}};
  PairPath right{3, 4, {}};
  if (g == 0) {
    column(left.cells, 1, 1, h);
    column(left.cells, 2, h, 1);
    column(right.cells, 3, 1, h);
    column(right.cells, 4, h, 1);
  } else {
    column(left.cells, 1, 1, h);
    left.cells.push_back({2, h});
    left.cells.push_back({3, h});
    left.cells.push_back({4, h});
    if (g >= 2) column(left.cells, 4, h - 1, h - g + 1);
    left.cells.push_back({3, h - g + 1});
    if (g >= 3) column(left.cells, 3, h - g + 2, h - 1);
    column(left.cells, 2, h - 1, 1);
    column(right.cells, 3, 1, h - g);
    column(right.cells, 4, h - g, 1);
  }
  return {left, right};
}

// {1,4} around {2,3}: outer path 2h+2t cells, inner 2h-2t.
std::array<PairPath, 2> family_nested(int h, int t) {
  PairPath outer{1, 4, {}};
  PairPath inner{3, 2, {}};
  column(outer.cells, 1, 1, h);
  column(outer.cells, 2, h, h - t + 1);
  column(outer.cells, 3, h - t + 1, h);
  column(outer.cells, 4, h, 1);
  column(inner.cells, 3, 1, h - t);
  column(inner.cells, 2, h - t, 1);
  return {outer, inner};
}

PairPath mirrored(PairPath p) {
  p.from = 5 - p.from;
  p.to = 5 - p.to;
  for (Local& l : p.cells) l.c = 5 - l.c;
  return p;
}

// {1,2} takes both full columns plus the bottom cells of columns 3 and 4;
// {3,4} the rest of those columns. Regions here are trees, not paths.
std::array<std::vector<Local>, 5> family_corner(int h, std::int64_t r1, bool corner_on_two) {
  std::array<std::vector<Local>, 5> out;
  const int a = static_cast<int>(corner_on_two ? r1 : 2 * h + 2 - r1);
  auto& mine = corner_on_two ? out[1] : out[2];
  auto& rest = corner_on_two ? out[2] : out[1];
  const int here = corner_on_two ? 1 : 2;
  const int there = corner_on_two ? 2 : 1;
  if (a < 1 || a > h) return {};
  column(mine, here, 1, a);
  if (a < h) column(rest, here, a + 1, h);
  column(rest, there, 1, h);
  rest.push_back({3, h});
  rest.push_back({4, h});
  return out;
}

// Candidate rectangle parts of each column's region, for region sizes
// need[1..4]. Callers still check that each region tiles.
std::vector<std::array<std::vector<Local>, 5>> rect_candidates(int h, const std::array<std::int64_t, 5>& need) {
  std::vector<std::array<PairPath, 2>> options;
  std::vector<std::array<std::vector<Local>, 5>> out;
  for (int c = 1; c <= 4; ++c) {
    if (need[c] < 1) return out;
  }
  const std::int64_t left = need[1] + need[2];
  const std::int64_t outer = need[1] + need[4];
  for (int g = 0; g < h; ++g) {
    if (g == 1) continue;
    if (left == 2 * h + 2 * g) options.push_back(family_split(h, g));
    if (g > 0 && left == 2 * h - 2 * g) {
      auto f = family_split(h, g);
      options.push_back({mirrored(f[0]), mirrored(f[1])});
    }
  }
  for (int t = 1; t < h; ++t) {
    if (outer == 2 * h + 2 * t) options.push_back(family_nested(h, t));
  }
  for (const auto& opt : options) {
    std::array<std::vector<Local>, 5> parts;
    bool ok = true;
    for (const PairPath& p : opt) {
      const std::int64_t a = need[p.from];
      const std::int64_t b = need[p.to];
      if (a + b != static_cast<std::int64_t>(p.cells.size())) {
        ok = false;
        break;
      }
      parts[p.from].assign(p.cells.begin(), p.cells.begin() + a);
      parts[p.to].assign(p.cells.rbegin(), p.cells.rbegin() + b);
    }
    if (ok) out.push_back(std::move(parts));
  }
  if (h >= 2) {
    for (bool mirror : {false, true}) {
      std::array<std::int64_t, 5> nd = need;
      if (mirror) nd = {0, need[4], need[3], need[2], need[1]};
      if (nd[1] + nd[2] != 2 * h + 2) continue;
      PairPath right{3, 4, {}};
      column(right.cells, 3, 1, h - 1);
      column(right.cells, 4, h - 1, 1);
      if (nd[3] + nd[4] != static_cast<std::int64_t>(right.cells.size())) continue;
      for (bool on_two : {false, true}) {
        auto parts = family_corner(h, nd[1], on_two);
        if (parts[1].empty() || parts[2].empty()) continue;
        parts[3].assign(right.cells.begin(), right.cells.begin() + nd[3]);
        parts[4].assign(right.cells.rbegin(), right.cells.rbegin() + nd[4]);
        if (mirror) {
          std::swap(parts[1], parts[4]);
          std::swap(parts[2], parts[3]);
          for (int c = 1; c <= 4; ++c) {
            for (Local& l : parts[c]) l.c = 5 - l.c;
          }
        }
        out.push_back(std::move(parts));
      }
    }
  }
  return out;
}

// Orders a region's dominoes outward from the root so each touches cells
// already placed; the first cell of each pair is the touching one.
std::optional<std::vector<std::pair<Local, Local>>> grow_order(Local root,
                                                                std::vector<std::pair<Local, Local>> pieces) {
  auto adjacent = [](Local x, Local y) { return std::abs(x.c - y.c) + std::abs(x.r - y.r) == 1; };
  std::vector<Local> have = {root};
  std::vector<std::pair<Local, Local>> out;
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t placed = 0; placed < pieces.size();) {
    bool progress = false;
    for (std::size_t q = 0; q < pieces.size(); ++q) {
      if (used[q]) continue;
      auto [a, b] = pieces[q];
      const bool na = std::any_of(have.begin(), have.end(), [&](Local y) { return adjacent(a, y); });
      const bool nb = std::any_of(have.begin(), have.end(), [&](Local y) { return adjacent(b, y); });
      if (!na && !nb) continue;
      out.push_back(na ? std::pair{a, b} : std::pair{b, a});
      have.push_back(a);
      have.push_back(b);
      used[q] = true;
      ++placed;
      progress = true;
    }
    if (!progress) return std::nullopt;
  }
  return out;
}

// Root plus a domino tiling of the rest, ordered outward; nullopt when the
// region minus its root has no tiling or is disconnected.
std::optional<std::vector<std::pair<Local, Local>>> region_dominoes(Local root, const std::vector<Local>& cells) {
  std::vector<Position> rest;
  for (Local l : cells) {
    if (l.c != root.c || l.r != root.r) rest.push_back({l.c, l.r});
  }
  if (rest.size() == cells.size()) return std::nullopt;
  auto tiling = tile(rest);
  if (!tiling) return std::nullopt;
  std::vector<std::pair<Local, Local>> pieces;
  for (auto [a, b] : *tiling) pieces.push_back({{a.x, a.y}, {b.x, b.y}});
  return grow_order(root, std::move(pieces));
}

// Item anchor cell and region stub (top down, root included) per column.
struct ColumnSpec {
  Local anchor;
  std::vector<Local> stub;
  int root = 0;
};

const std::array<ColumnSpec, 5>& column_specs() {
  static const std::array<ColumnSpec, 5> specs = {
      ColumnSpec{},
      ColumnSpec{{1, 2}, {{1, 3}, {1, 4}}, 0},
      ColumnSpec{{2, 2}, {{2, 3}, {2, 4}}, 0},
      ColumnSpec{{3, 4}, {}, 0},
      ColumnSpec{{3, 3}, {{4, 1}, {4, 2}, {4, 3}, {4, 4}}, 2},
  };
  return specs;
}

Position to_abs(const BinFrame& f, Local l) { return {f.left_x + l.c - 1, f.top_y - (l.r - 1)}; }

// Fallback for bins the column scheme cannot host (mostly items of four
// cells). Regions of the three smaller items are enumerated as connected
// cell sets grown from a root beside an anchor; the largest item takes the
// cells left over, which must themselves form a valid region.
class BinSearch {
 public:
  BinSearch(int rows, const std::array<std::pair<int, std::int64_t>, 4>& items, std::int64_t budget)
      : rows_(rows), items_(items), budget_(budget), grid_(static_cast<std::size_t>(rows) * 4, kFree) {
    set({1, 1}, kPreAnchor);
    set({2, 1}, kWall);
    set({3, 1}, kWall);
    set({3, 2}, kPreAnchor);
    big_ = 0;
    for (int t = 1; t < 4; ++t) {
      if (items_[t].second > items_[big_].second) big_ = t;
    }
    for (int t = 0; t < 4; ++t) {
      if (t != big_) small_.push_back(t);
    }
  }

  std::optional<std::array<std::vector<Placement>, 4>> run(const BinFrame& frame) {
    if (!place(0)) return std::nullopt;
    std::array<std::vector<Placement>, 4> out;
    for (int t = 0; t < 4; ++t) {
      out[t].push_back({to_abs(frame, anchor_[t]), to_abs(frame, root_[t])});
      for (auto [x, y] : pieces_[t]) out[t].push_back({to_abs(frame, x), to_abs(frame, y)});
    }
    return out;
  }

 private:
  static constexpr int kFree = -1;
  static constexpr int kWall = -2;
  static constexpr int kPreAnchor = -3;
  static constexpr int kAnchorBase = -10;  // kAnchorBase - t marks item t's anchor

  bool inside(Local l) const { return l.c >= 1 && l.c <= 4 && l.r >= 1 && l.r <= rows_; }
  int get(Local l) const { return grid_[static_cast<std::size_t>(l.r - 1) * 4 + (l.c - 1)]; }
  void set(Local l, int v) { grid_[static_cast<std::size_t>(l.r - 1) * 4 + (l.c - 1)] = v; }
  bool is_anchor(Local l) const { return inside(l) && (get(l) == kPreAnchor || get(l) <= kAnchorBase); }

  static constexpr std::array<Local, 4> kSteps = {Local{1, 0}, Local{-1, 0}, Local{0, 1}, Local{0, -1}};

  std::vector<Local> free_cells() const {
    std::vector<Local> out;
    for (int r = 1; r <= rows_; ++r) {
      for (int c = 1; c <= 4; ++c) {
        if (get({c, r}) == kFree) out.push_back({c, r});
      }
    }
    return out;
  }

  // Free pockets must be fillable by whole remaining items.
  bool pockets_ok(std::size_t next) const {
    std::vector<std::int64_t> rest;
    for (std::size_t q = next; q < small_.size(); ++q) rest.push_back(items_[small_[q]].second);
    rest.push_back(items_[big_].second);
    std::vector<bool> seen(grid_.size(), false);
    for (Local start : free_cells()) {
      const std::size_t si = static_cast<std::size_t>(start.r - 1) * 4 + (start.c - 1);
      if (seen[si]) continue;
      std::int64_t size = 0;
      std::vector<Local> stack = {start};
      seen[si] = true;
      while (!stack.empty()) {
        Local x = stack.back();
        stack.pop_back();
        ++size;
        for (Local d : kSteps) {
          const Local y{x.c + d.c, x.r + d.r};
          if (!inside(y) || get(y) != kFree) continue;
          const std::size_t yi = static_cast<std::size_t>(y.r - 1) * 4 + (y.c - 1);
          if (!seen[yi]) {
            seen[yi] = true;
            stack.push_back(y);
          }
        }
      }
      // Subset-sum over the few remaining sizes.
      bool fits = false;
      for (unsigned mask = 1; mask < (1u << rest.size()) && !fits; ++mask) {
        std::int64_t sum = 0;
        for (std::size_t q = 0; q < rest.size(); ++q) {
          if (mask & (1u << q)) sum += rest[q];
        }
        fits = sum == size;
      }
      if (!fits) return false;
    }
    return true;
  }

  bool place(std::size_t idx) {
    if (--budget_ < 0) return false;
    if (idx == small_.size()) return finish_big();
    const int t = small_[idx];
    const std::int64_t target = items_[t].second - 1;
    for (Local a : free_cells()) {
      bool touches = false;
      for (Local d : kSteps) touches = touches || is_anchor({a.c + d.c, a.r + d.r});
      if (!touches) continue;
      set(a, kAnchorBase - t);
      anchor_[t] = a;
      for (Local d : kSteps) {
        const Local r{a.c + d.c, a.r + d.r};
        if (!inside(r) || get(r) != kFree) continue;
        root_[t] = r;
        region_.clear();
        seen_.assign(grid_.size(), false);
        mark(r);
        if (grow({r}, t, target, idx)) return true;
        if (budget_ < 0) return false;
      }
      set(a, kFree);
    }
    return false;
  }

  void mark(Local l) { seen_[static_cast<std::size_t>(l.r - 1) * 4 + (l.c - 1)] = true; }
  bool marked(Local l) const { return seen_[static_cast<std::size_t>(l.r - 1) * 4 + (l.c - 1)]; }

  // Redelmeier-style enumeration of connected sets containing the root.
  bool grow(std::vector<Local> untried, int t, std::int64_t target, std::size_t idx) {
    while (!untried.empty()) {
      if (--budget_ < 0) return false;
      const Local v = untried.back();
      untried.pop_back();
      region_.push_back(v);
      set(v, t);
      bool done = false;
      if (static_cast<std::int64_t>(region_.size()) == target) {
        done = accept(t, idx);
      } else {
        std::vector<Local> next = untried;
        std::vector<Local> fresh;
        for (Local d : kSteps) {
          const Local w{v.c + d.c, v.r + d.r};
          if (inside(w) && get(w) == kFree && !marked(w)) {
            mark(w);
            fresh.push_back(w);
            next.push_back(w);
          }
        }
        const std::vector<Local> saved = region_;
        done = grow(std::move(next), t, target, idx);
        if (!done) {
          region_ = saved;
          for (Local w : fresh) seen_[static_cast<std::size_t>(w.r - 1) * 4 + (w.c - 1)] = false;
        }
      }
      if (done) return true;
      set(v, kFree);
      region_.pop_back();
    }
    return false;
  }

  bool accept(int t, std::size_t idx) {
    auto dominoes = region_dominoes(root_[t], region_);
    if (!dominoes || !pockets_ok(idx + 1)) return false;
    pieces_[t] = std::move(*dominoes);
    // The enumeration state is rebuilt for the next item.
    const std::vector<bool> seen = seen_;
    const std::vector<Local> region = region_;
    if (place(idx + 1)) return true;
    seen_ = seen;
    region_ = region;
    return false;
  }

  bool finish_big() {
    const int t = big_;
    const std::vector<Local> cells = free_cells();
    if (static_cast<std::int64_t>(cells.size()) != items_[t].second) return false;
    for (Local a : cells) {
      bool touches = false;
      for (Local d : kSteps) touches = touches || is_anchor({a.c + d.c, a.r + d.r});
      if (!touches) continue;
      anchor_[t] = a;
      if (!anchors_in_order()) continue;
      std::vector<Local> region;
      for (Local c : cells) {
        if (c.c != a.c || c.r != a.r) region.push_back(c);
      }
      for (Local d : kSteps) {
        const Local r{a.c + d.c, a.r + d.r};
        if (!inside(r) || get(r) != kFree) continue;
        auto dominoes = region_dominoes(r, region);
        if (!dominoes) continue;
        root_[t] = r;
        pieces_[t] = std::move(*dominoes);
        return true;
      }
    }
    return false;
  }

  bool anchors_in_order() const {
    std::vector<Local> have = {{1, 1}, {3, 2}};
    for (int t = 0; t < 4; ++t) {
      bool ok = false;
      for (Local h : have) ok = ok || std::abs(h.c - anchor_[t].c) + std::abs(h.r - anchor_[t].r) == 1;
      if (!ok) return false;
      have.push_back(anchor_[t]);
    }
    return true;
  }

  int rows_;
  std::array<std::pair<int, std::int64_t>, 4> items_;
  std::int64_t budget_;
  std::vector<int> grid_;
  int big_ = 0;
  std::vector<int> small_;
  std::vector<Local> region_;
  std::vector<bool> seen_;
  std::array<Local, 4> anchor_{};
  std::array<Local, 4> root_{};
  std::array<std::vector<std::pair<Local, Local>>, 4> pieces_;
};

}  // namespace

void validate_solution(const FourPartitionInstance& inst, const PartitionSolution& sol) {
  if (static_cast<int>(sol.bins.size()) != inst.m()) {
    throw std::invalid_argument("solution has " + std::to_string(sol.bins.size()) +
                                " bins, expected " + std::to_string(inst.m()));
  }
  std::vector<bool> used(inst.n() + 1, false);
  for (std::size_t j = 0; j < sol.bins.size(); ++j) {
    std::int64_t sum = 0;
    for (int i : sol.bins[j]) {
      if (i < 1 || i > inst.n() || used[i]) {
        throw std::invalid_argument("bin " + std::to_string(j + 1) + " has invalid or repeated item " +
                                    std::to_string(i));
      }
      used[i] = true;
      sum += inst.sizes()[i - 1];
    }
    if (sum != inst.k()) {
      throw std::invalid_argument("bin " + std::to_string(j + 1) + " sums to " + std::to_string(sum) +
                                  ", expected " + std::to_string(inst.k()));
    }
  }
}

PartitionSolution normalized(PartitionSolution sol) {
  for (auto& b : sol.bins) std::sort(b.begin(), b.end());
  std::sort(sol.bins.begin(), sol.bins.end());
  return sol;
}

WitnessLayout make_layout(const ReducedInstance& r) {
  const int m = r.m;
  if (m < 1) throw LayoutError("no bins");
  const std::int32_t s = 6 * m;
  const std::vector<Position> ring = make_ring(s);
  // Contour head: dents next to ring cells 0, 7 and 8, guide off cells 3-4,
  // the 2 of [8|2] outside ring cell 9.
  for (int i : {0, 7, 8, 3, 4}) {
    if (!inward(ring[i], s)) {
      throw LayoutError("m = " + std::to_string(m) + ": contour head cell " + std::to_string(i) +
                        " is a ring corner; no witness frame for this bin count");
    }
  }
  if (*inward(ring[3], s) != *inward(ring[4], s)) throw LayoutError("guide straddles a corner");
  const std::array<Position, 3> dents_rel = {ring[0] + *inward(ring[0], s), ring[7] + *inward(ring[7], s),
                                             ring[8] + *inward(ring[8], s)};

  // Tower: 3x3 block inside the square, away from the dents, with the parity
  // that leaves a tileable remainder.
  std::optional<Position> tower;
  for (std::int32_t ty = 2; ty < s - 2 && !tower; ++ty) {
    for (std::int32_t tx = 2; tx < s - 2 && !tower; ++tx) {
      if (((tx + ty) & 1) == 0) continue;
      bool clear = true;
      for (Position d : dents_rel) {
        if (std::abs(d.x - tx) <= 2 && std::abs(d.y - ty) <= 2) clear = false;
      }
      if (clear) tower = Position{tx, ty};
    }
  }
  if (!tower) throw LayoutError("no room for the tower block");

  WitnessLayout out;
  out.m = m;
  out.side = s;
  out.square_min = neg(*tower);
  for (int i = 0; i < 3; ++i) out.dents[i] = sub(dents_rel[i], *tower);
  for (Position p : ring) out.ring.push_back(sub(p, *tower));
  out.contour_start = out.ring[0];
  out.guide_step = neg(*inward(ring[3], s));
  const auto rows = static_cast<std::int32_t>(r.k / 4 + 2);
  for (int j = 1; j <= m; ++j) {
    BinFrame f;
    f.left_x = s - 6 * j + 1 - tower->x;
    f.right_x = f.left_x + 3;
    f.top_y = -2 - tower->y;
    f.rows = rows;
    out.bins.push_back(f);
  }
  return out;
}

std::vector<ItemPlacements> pack_bin(const WitnessLayout& layout, int bin,
                                     std::array<std::pair<int, std::int64_t>, 4> items) {
  if (bin < 1 || bin > static_cast<int>(layout.bins.size())) throw PackingError("no such bin");
  const BinFrame& frame = layout.bins[bin - 1];
  std::int64_t sum = 0;
  for (const auto& [i, x] : items) {
    if (x <= 0 || x % 2 != 0) throw std::invalid_argument("item " + std::to_string(i) + " has odd size");
    sum += x;
  }
  if (sum != 4 * (static_cast<std::int64_t>(frame.rows) - 2)) {
    throw std::invalid_argument("bin items sum to " + std::to_string(sum) + ", expected " +
                                std::to_string(4 * (frame.rows - 2)));
  }
  const int h = frame.rows - 5;
  if (h < 1) throw PackingError("bin too shallow for items");
  std::sort(items.begin(), items.end());
  const auto& specs = column_specs();

  // perm[c] = position in `items` assigned to column c. The column-3 item
  // anchors off the column-4 item's anchor, so it must be played later.
  std::array<int, 4> order = {0, 1, 2, 3};
  do {
    std::array<int, 5> at{};
    for (int c = 1; c <= 4; ++c) at[c] = order[c - 1];
    if (at[3] < at[4]) continue;
    std::array<std::int64_t, 5> need{};
    for (int c = 1; c <= 4; ++c) {
      need[c] = items[at[c]].second - 1 - static_cast<std::int64_t>(specs[c].stub.size());
    }
    for (const auto& rect : rect_candidates(h, need)) {
      std::vector<ItemPlacements> out(4);
      bool ok = true;
      for (int c = 1; c <= 4 && ok; ++c) {
        std::vector<Local> region = specs[c].stub;
        for (Local l : rect[c]) region.push_back({l.c, l.r + 4});
        const Local root = specs[c].stub.empty() ? Local{c, 5} : specs[c].stub[specs[c].root];
        auto dominoes = region_dominoes(root, region);
        if (!dominoes) {
          ok = false;
          break;
        }
        ItemPlacements& ip = out[at[c]];
        ip.item = items[at[c]].first;
        ip.dominoes.push_back({to_abs(frame, specs[c].anchor), to_abs(frame, root)});
        for (auto [x, y] : *dominoes) ip.dominoes.push_back({to_abs(frame, x), to_abs(frame, y)});
      }
      if (ok) return out;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  BinSearch search(frame.rows - 1, items, kSearchBudget);
  if (auto found = search.run(frame)) {
    std::vector<ItemPlacements> out(4);
    for (int t = 0; t < 4; ++t) out[t] = {items[t].first, std::move((*found)[t])};
    return out;
  }
  std::string sizes;
  for (const auto& it : items) sizes += " " + std::to_string(it.second);
  throw PackingError("bin " + std::to_string(bin) + ": no path family fits sizes" + sizes);
}

Certificate build_witness(const ReducedInstance& r, const PartitionSolution& sol) {
  validate_solution(FourPartitionInstance(r.sizes, r.k), sol);
  const WitnessLayout layout = make_layout(r);
  const int m = r.m;
  const std::int32_t s = layout.side;
  const std::vector<Position>& ring = layout.ring;

  // Square: tile what the guardians, tower and dents leave, then order so
  // each domino touches color 1 already on the board.
  std::vector<Placement> square;
  {
    PosSet blocked(layout.dents.begin(), layout.dents.end());
    for (std::int32_t dx = -1; dx <= 1; ++dx) {
      for (std::int32_t dy = -1; dy <= 1; ++dy) blocked.insert({dx, dy});
    }
    std::vector<Position> cells;
    for (std::int32_t y = 0; y < s; ++y) {
      for (std::int32_t x = 0; x < s; ++x) {
        Position p = layout.square_min + Position{x, y};
        if (!blocked.contains(p)) cells.push_back(p);
      }
    }
    auto tiling = tile(cells);
    if (!tiling) throw LayoutError("square remainder has no domino tiling");
    PosSet ones = {{1, 0}, {1, 1}};
    std::vector<bool> done(tiling->size(), false);
    for (std::size_t placed = 0; placed < tiling->size();) {
      bool progress = false;
      for (std::size_t i = 0; i < tiling->size(); ++i) {
        if (done[i]) continue;
        auto [a, b] = (*tiling)[i];
        auto touches = [&](Position p) {
          for (Position d : kNeighborOffsets) {
            if (ones.contains(p + d)) return true;
          }
          return false;
        };
        if (!touches(a) && !touches(b)) continue;
        square.push_back({a, b});
        ones.insert(a);
        ones.insert(b);
        done[i] = true;
        ++placed;
        progress = true;
      }
      if (!progress) throw LayoutError("square region is disconnected");
    }
  }

  // Contour, in sequence order.
  std::vector<Placement> contour;
  {
    const PosSet ring_set(ring.begin(), ring.end());
    auto in = [&](int i) -> Position {
      for (Position d : layout.dents) {
        if (edge_adjacent(d, ring[i])) return d;
      }
      throw LayoutError("dent missing");
    };
    contour.push_back({in(0), ring[0]});
    contour.push_back({ring[1], ring[2]});
    contour.push_back({ring[3], ring[4]});
    contour.push_back({ring[5], ring[6]});
    contour.push_back({ring[7], in(7)});
    contour.push_back({ring[8], in(8)});
    std::optional<Position> two;
    for (Position d : kNeighborOffsets) {
      Position p = ring[9] + d;
      const Position rel = sub(p, layout.square_min);
      const bool inside = rel.x >= 0 && rel.y >= 0 && rel.x < s && rel.y < s;
      if (!inside && !ring_set.contains(p) && !edge_adjacent(p, ring[4] + layout.guide_step) &&
          !edge_adjacent(p, ring[3] + layout.guide_step)) {
        two = p;
        break;
      }
    }
    if (!two) throw LayoutError("no room for the [8|2] domino");
    contour.push_back({ring[9], *two});
    contour.push_back({ring[10], ring[11]});
    const int nines = 9 * m - 8;
    for (int t = 0; t < nines; ++t) contour.push_back({ring[12 + 2 * t], ring[13 + 2 * t]});
    contour.push_back({ring[18 * m - 4], ring[18 * m - 3]});
    for (int t = 0; t <= 3 * m + 1; ++t) contour.push_back({ring[18 * m - 2 + 2 * t], ring[18 * m - 1 + 2 * t]});
    contour.push_back({ring[24 * m + 2], ring[24 * m + 3]});
  }

  // Items, packed per bin.
  std::map<int, std::vector<Placement>> item_moves;
  for (int j = 1; j <= m; ++j) {
    std::array<std::pair<int, std::int64_t>, 4> items;
    for (int t = 0; t < 4; ++t) {
      const int i = sol.bins[j - 1][t];
      items[t] = {i, r.sizes[i - 1]};
    }
    for (ItemPlacements& ip : pack_bin(layout, j, items)) item_moves[ip.item] = std::move(ip.dominoes);
  }

  const std::int32_t arm_rows = static_cast<std::int32_t>(r.k / 4 + 2);
  const std::array<Placement, 4> guardians = {Placement{{1, 0}, {1, 1}}, Placement{{0, 1}, {-1, 1}},
                                              Placement{{-1, 0}, {-1, -1}}, Placement{{0, -1}, {1, -1}}};
  std::array<std::int64_t, kGadgetCount> seen{};
  std::map<int, std::int64_t> per_index;
  Certificate cert;
  cert.choices.reserve(r.tau.size());
  for (std::size_t i = 0; i < r.tau.size(); ++i) {
    const GadgetTag tag = r.tags[i];
    const std::int64_t n = seen[static_cast<int>(tag.group)]++;
    const std::int64_t within = per_index[static_cast<int>(tag.group) * 1'000'000 + tag.index]++;
    Placement p;
    switch (tag.group) {
      case Gadget::kGuardians:
        p = guardians.at(n);
        break;
      case Gadget::kSquare:
        p = square.at(n);
        break;
      case Gadget::kContour:
        p = contour.at(n);
        break;
      case Gadget::kGuide: {
        const Position step{layout.guide_step.x * static_cast<std::int32_t>(n + 1),
                            layout.guide_step.y * static_cast<std::int32_t>(n + 1)};
        p = {ring[3] + step, ring[4] + step};
        break;
      }
      case Gadget::kArms: {
        const int q = tag.index - 1;
        const std::int32_t x = layout.square_min.x + s - 6 * q;
        const std::int32_t y = layout.bins.empty() ? 0 : layout.bins[0].top_y - static_cast<std::int32_t>(within);
        if (within >= arm_rows) throw LayoutError("arm too long");
        p = {{x, y}, {x - 1, y}};
        break;
      }
      case Gadget::kAnchors: {
        const BinFrame& f = layout.bins.at(tag.index - 1);
        p = within == 0 ? Placement{to_abs(f, {2, 1}), to_abs(f, {1, 1})}
                        : Placement{to_abs(f, {3, 1}), to_abs(f, {3, 2})};
        break;
      }
      case Gadget::kItems:
        p = item_moves.at(tag.index).at(within);
        break;
      case Gadget::kZippers: {
        const BinFrame& f = layout.bins.at(tag.index - 1);
        p = within == 0 ? Placement{to_abs(f, {4, f.rows}), to_abs(f, {3, f.rows})}
                        : Placement{to_abs(f, {2, f.rows}), to_abs(f, {1, f.rows})};
        break;
      }
    }
    cert.choices.emplace_back(p);
  }

  auto result = replay(r.tau, cert);
  if (auto* f = std::get_if<Failure>(&result)) {
    throw LayoutError("witness replay failed at domino " + std::to_string(f->index) + ": " + f->detail);
  }
  const std::int64_t got = score(std::get<BoardState>(result));
  if (got != r.s) {
    throw LayoutError("witness scores " + std::to_string(got) + ", expected " + std::to_string(r.s));
  }
  return cert;
}

PartitionSolution extract_partition(const ReducedInstance& r, const BoardState& board) {
  const int anchor = r.anchor_color();
  std::unordered_map<int, std::vector<Position>> by_color;
  for (const auto& [p, c] : board.cells()) by_color[c.color.value()].push_back(p);
  auto color_at = [&](Position p) -> int {
    const CellSpec* c = board.at(p);
    return c == nullptr ? 0 : c->color.value();
  };

  // Label anchor-color components by the bin whose contour anchor color they touch.
  std::unordered_map<Position, int, PositionHash> bin_of;
  for (Position start : by_color[anchor]) {
    if (bin_of.contains(start)) continue;
    std::vector<Position> comp = {start};
    bin_of[start] = 0;
    std::set<int> touched;
    for (std::size_t q = 0; q < comp.size(); ++q) {
      for (Position d : kNeighborOffsets) {
        const Position nb = comp[q] + d;
        const int c = color_at(nb);
        if (c == anchor && !bin_of.contains(nb)) {
          bin_of[nb] = 0;
          comp.push_back(nb);
        } else if (c >= 12 && c <= 3 * r.m + 9 && c % 3 == 0) {
          touched.insert((c - 9) / 3);
        }
      }
    }
    const int j = touched.size() == 1 ? *touched.begin() : -1;
    for (Position p : comp) bin_of[p] = j;
  }

  std::vector<std::vector<int>> bins(r.m);
  for (int i = 1; i <= r.n; ++i) {
    std::set<int> found;
    for (Position p : by_color[r.item_color(i)]) {
      for (Position d : kNeighborOffsets) {
        auto it = bin_of.find(p + d);
        if (it != bin_of.end()) found.insert(it->second);
      }
    }
    if (found.size() != 1 || *found.begin() < 1) {
      throw ExtractionError("item " + std::to_string(i) + " is not anchored in exactly one bin");
    }
    bins[*found.begin() - 1].push_back(i);
  }

  PartitionSolution sol;
  for (int j = 0; j < r.m; ++j) {
    if (bins[j].size() != 4) {
      throw ExtractionError("bin " + std::to_string(j + 1) + " holds " + std::to_string(bins[j].size()) +
                            " items, expected 4");
    }
    sol.bins.push_back({bins[j][0], bins[j][1], bins[j][2], bins[j][3]});
  }
  try {
    validate_solution(FourPartitionInstance(r.sizes, r.k), sol);
  } catch (const std::invalid_argument& e) {
    throw ExtractionError(e.what());
  }
  return sol;
}

}  // namespace kingdomino
