#include "kingdomino/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "kingdomino/symmetry.hpp"

namespace kingdomino {

CanonicalKey canonical_key(const BoardState& board) {
  std::vector<CanonicalKey::Cell> best;
  std::vector<CanonicalKey::Cell> image;
  for (int g = 0; g < kDihedralOrder; ++g) {
    image.clear();
    for (const auto& [pos, spec] : board.cells()) {
      const Position t = transform(pos, g);
      image.push_back({t.x, t.y, spec.color.value()});
    }
    std::sort(image.begin(), image.end());
    if (g == 0 || image < best) best = image;
  }
  return CanonicalKey(std::move(best));
}

std::int64_t enumerate_playouts(std::span<const Domino> tau,
                                const std::function<void(const BoardState&)>& visit) {
  std::int64_t leaves = 0;
  BoardState board;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == tau.size()) {
      ++leaves;
      visit(board);
      return;
    }
    const auto moves = legal_placements(board, tau[i]);
    if (moves.empty()) {
      BoardState saved = board;
      board.play(tau[i], Discard{});
      self(self, i + 1);
      board = std::move(saved);
      return;
    }
    for (const Placement& p : moves) {
      BoardState saved = board;
      board.play(tau[i], p);
      self(self, i + 1);
      board = std::move(saved);
    }
  };
  rec(rec, 0);
  return leaves;
}

namespace {

constexpr int kEmpty = 0;
constexpr int kTowerCell = -1;

// Dense square grid big enough for every play-out of a short sequence: a
// chain of n dominoes never leaves the diamond of radius 2n around the tower.
class SearchGrid {
 public:
  struct Move {
    int first = -1;   // grid index of the first cell, -1 for discard
    int second = -1;
    int weight = 1;   // generation routes, under kAnchorRoutes
  };

  SearchGrid(std::span<const Domino> tau,
             CountConvention convention = CountConvention::kChoiceVectors)
      : tau_(tau), convention_(convention) {
    radius_ = 2 * static_cast<int>(tau.size()) + 2;
    width_ = 2 * radius_ + 1;
    color_.assign(static_cast<std::size_t>(width_) * width_, kEmpty);
    crowns_.assign(color_.size(), 0);
    stamp_.assign(color_.size(), 0);
    tower_ = index(0, 0);
    color_[tower_] = kTowerCell;
    offsets_[0] = 1;
    offsets_[1] = -1;
    offsets_[2] = width_;
    offsets_[3] = -width_;

    // Dense color ids so that bound tallies are flat arrays.
    std::map<int, int> ids;
    for (const Domino& d : tau) {
      ids.emplace(d.first.color.value(), 0);
      ids.emplace(d.second.color.value(), 0);
    }
    int next = 1;
    for (auto& [c, id] : ids) id = next++;
    num_colors_ = next;
    for (const Domino& d : tau) {
      dominoes_.push_back({ids[d.first.color.value()], d.first.crowns,
                           ids[d.second.color.value()], d.second.crowns});
      original_color_[dominoes_.back()[0]] = d.first.color.value();
      original_color_[dominoes_.back()[2]] = d.second.color.value();
    }
    const std::size_t n = tau.size();
    suffix_cells_.assign((n + 1) * num_colors_, 0);
    suffix_crowns_.assign((n + 1) * num_colors_, 0);
    for (std::size_t i = n; i-- > 0;) {
      for (int c = 0; c < num_colors_; ++c) {
        suffix_cells_[i * num_colors_ + c] = suffix_cells_[(i + 1) * num_colors_ + c];
        suffix_crowns_[i * num_colors_ + c] = suffix_crowns_[(i + 1) * num_colors_ + c];
      }
      const auto& d = dominoes_[i];
      suffix_cells_[i * num_colors_ + d[0]] += 1;
      suffix_crowns_[i * num_colors_ + d[0]] += d[1];
      suffix_cells_[i * num_colors_ + d[2]] += 1;
      suffix_crowns_[i * num_colors_ + d[2]] += d[3];
    }
    placed_cells_.assign(num_colors_, 0);
    placed_crowns_.assign(num_colors_, 0);
  }

  std::size_t size() const { return dominoes_.size(); }

  void moves(std::size_t i, std::vector<Move>& out) {
    out.clear();
    const auto& d = dominoes_[i];
    const bool symmetric = d[0] == d[2] && d[1] == d[3];
    const bool dedupe = symmetric && convention_ == CountConvention::kSymmetricDedupe;
    const bool routes = convention_ == CountConvention::kAnchorRoutes;
    ++generation_;
    auto consider = [&](int a) {
      if (color_[a] != kEmpty || stamp_[a] == generation_) return;
      stamp_[a] = generation_;
      const bool first_ok = matches(a, d[0]);
      const bool second_ok = matches(a, d[2]);
      if (!first_ok && !second_ok) return;
      for (int off : offsets_) {
        const int b = a + off;
        if (color_[b] != kEmpty) continue;
        if (first_ok && (!dedupe || a < b)) {
          out.push_back({a, b, routes && matches(b, d[2]) ? 2 : 1});
        }
        // (b, a) is produced from b's side when the first cell matches there.
        if (second_ok && !matches(b, d[0]) && (!dedupe || b < a)) {
          out.push_back({b, a, 1});
        }
      }
    };
    for (int off : offsets_) consider(tower_ + off);
    for (int p : occupied_) {
      for (int off : offsets_) consider(p + off);
    }
  }

  void place(std::size_t i, const Move& m) {
    const auto& d = dominoes_[i];
    if (m.first >= 0) {
      set(m.first, d[0], d[1]);
      set(m.second, d[2], d[3]);
    }
  }

  void undo(const Move& m) {
    if (m.first >= 0) {
      clear(m.second);
      clear(m.first);
    }
  }

  // Per-color cells x crowns over placed cells and the dominoes from i on.
  std::int64_t bound(std::size_t i) const {
    std::int64_t total = 0;
    for (int c = 1; c < num_colors_; ++c) {
      total += (placed_cells_[c] + suffix_cells_[i * num_colors_ + c]) *
               (placed_crowns_[c] + suffix_crowns_[i * num_colors_ + c]);
    }
    return total;
  }

  std::int64_t score() {
    ++generation_;
    std::int64_t total = 0;
    for (int start : occupied_) {
      if (stamp_[start] == generation_) continue;
      stamp_[start] = generation_;
      std::int64_t cells = 0;
      std::int64_t crowns = 0;
      stack_.assign(1, start);
      while (!stack_.empty()) {
        const int p = stack_.back();
        stack_.pop_back();
        ++cells;
        crowns += crowns_[p];
        for (int off : offsets_) {
          const int q = p + off;
          if (color_[q] == color_[start] && stamp_[q] != generation_) {
            stamp_[q] = generation_;
            stack_.push_back(q);
          }
        }
      }
      total += cells * crowns;
    }
    return total;
  }

  CanonicalKey key() const {
    std::vector<CanonicalKey::Cell> best;
    std::vector<CanonicalKey::Cell> image;
    for (int g = 0; g < kDihedralOrder; ++g) {
      image.clear();
      for (int p : occupied_) {
        const Position t = transform(position(p), g);
        image.push_back({t.x, t.y, original_color_.at(color_[p])});
      }
      std::sort(image.begin(), image.end());
      if (g == 0 || image < best) best = image;
    }
    return CanonicalKey(std::move(best));
  }

 private:
  int index(int x, int y) const { return (y + radius_) * width_ + (x + radius_); }
  Position position(int idx) const {
    return {idx % width_ - radius_, idx / width_ - radius_};
  }

  bool matches(int a, int color) const {
    for (int off : offsets_) {
      const int c = color_[a + off];
      if (c == kTowerCell || c == color) return true;
    }
    return false;
  }

  void set(int p, int color, int crowns) {
    color_[p] = color;
    crowns_[p] = crowns;
    occupied_.push_back(p);
    placed_cells_[color] += 1;
    placed_crowns_[color] += crowns;
  }

  void clear(int p) {
    placed_cells_[color_[p]] -= 1;
    placed_crowns_[color_[p]] -= crowns_[p];
    color_[p] = kEmpty;
    crowns_[p] = 0;
    occupied_.pop_back();
  }

  std::span<const Domino> tau_;
  CountConvention convention_;
  int radius_ = 0;
  int width_ = 0;
  int tower_ = 0;
  int offsets_[4] = {};
  int num_colors_ = 0;
  std::vector<std::array<int, 4>> dominoes_;  // color id, crowns, color id, crowns
  std::map<int, int> original_color_;
  std::vector<int> color_;
  std::vector<int> crowns_;
  std::vector<unsigned> stamp_;
  unsigned generation_ = 0;
  std::vector<int> occupied_;
  std::vector<int> stack_;
  std::vector<std::int64_t> suffix_cells_;
  std::vector<std::int64_t> suffix_crowns_;
  std::vector<std::int64_t> placed_cells_;
  std::vector<std::int64_t> placed_crowns_;
};

using Prefix = std::vector<SearchGrid::Move>;

// Depth-first search below `depth` on a grid already holding a prefix.
// `keep(bound)` decides whether a subtree is worth entering; `leaf` is called
// on every complete play-out reached.
template <typename Keep, typename Leaf>
void search(SearchGrid& grid, std::size_t depth, std::int64_t prefix_weight, Keep&& keep,
            Leaf&& leaf) {
  std::vector<std::vector<SearchGrid::Move>> buffers(grid.size() + 1);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t weight) -> void {
    if (i == grid.size()) {
      leaf(weight);
      return;
    }
    if (!keep(grid.bound(i))) return;
    auto& moves = buffers[i];
    grid.moves(i, moves);
    if (moves.empty()) {
      self(self, i + 1, weight);
      return;
    }
    for (std::size_t j = 0; j < moves.size(); ++j) {
      const SearchGrid::Move m = moves[j];
      grid.place(i, m);
      self(self, i + 1, weight * m.weight);
      grid.undo(m);
    }
  };
  rec(rec, depth, prefix_weight);
}

// All nodes at depth `split` (or leaves above it), in DFS order.
std::vector<Prefix> split_prefixes(std::span<const Domino> tau, std::size_t split,
                                   CountConvention convention) {
  SearchGrid grid(tau, convention);
  std::vector<Prefix> out;
  Prefix current;
  std::vector<SearchGrid::Move> moves;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == split || i == tau.size()) {
      out.push_back(current);
      return;
    }
    std::vector<SearchGrid::Move> local;
    grid.moves(i, local);
    if (local.empty()) local.push_back({});
    for (const auto& m : local) {
      grid.place(i, m);
      current.push_back(m);
      self(self, i + 1);
      current.pop_back();
      grid.undo(m);
    }
  };
  rec(rec, 0);
  return out;
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

// Runs `work(grid, depth)` for every split prefix on a pool of workers. Each
// worker owns a state object created by `make_state`; states are returned
// in worker order for merging.
template <typename State, typename Work>
std::vector<State> run_split(std::span<const Domino> tau, const SearchOptions& opts,
                             Work&& work) {
  const unsigned jobs = resolve_jobs(opts.jobs);
  const std::size_t split = jobs == 1 ? 0 : std::min<std::size_t>(2, tau.size());
  const auto prefixes = split_prefixes(tau, split, opts.convention);
  std::atomic<std::size_t> next{0};
  std::vector<State> states(jobs);
  auto worker = [&](unsigned w) {
    SearchGrid grid(tau, opts.convention);
    for (std::size_t t = next++; t < prefixes.size(); t = next++) {
      const Prefix& prefix = prefixes[t];
      std::int64_t weight = 1;
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        grid.place(i, prefix[i]);
        weight *= prefix[i].weight;
      }
      work(grid, prefix.size(), weight, states[w]);
      for (std::size_t i = prefix.size(); i-- > 0;) grid.undo(prefix[i]);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
  }
  return states;
}

}  // namespace

std::int64_t count_playouts(std::span<const Domino> tau, const SearchOptions& opts) {
  SearchOptions plain = opts;
  plain.convention = CountConvention::kChoiceVectors;
  auto states = run_split<std::int64_t>(
      tau, plain, [](SearchGrid& grid, std::size_t depth, std::int64_t, std::int64_t& leaves) {
        search(grid, depth, 1, [](std::int64_t) { return true; }, [&](std::int64_t) { ++leaves; });
      });
  std::int64_t total = 0;
  for (auto n : states) total += n;
  return total;
}

std::int64_t max_score(std::span<const Domino> tau, const SearchOptions& opts) {
  std::atomic<std::int64_t> incumbent{0};
  auto raise = [&](std::int64_t v) {
    std::int64_t cur = incumbent.load(std::memory_order_relaxed);
    while (v > cur && !incumbent.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  };
  const bool prune = opts.prune;
  run_split<char>(tau, opts, [&](SearchGrid& grid, std::size_t depth, std::int64_t, char&) {
    search(
        grid, depth, 1,
        [&](std::int64_t bound) {
          return !prune || bound > incumbent.load(std::memory_order_relaxed);
        },
        [&](std::int64_t) { raise(grid.score()); });
  });
  return incumbent.load();
}

CountReport count_max_score(std::span<const Domino> tau, const SearchOptions& opts) {
  CountReport report;
  report.prefix_length = static_cast<int>(tau.size());
  report.max_score = max_score(tau, opts);
  const std::int64_t target = report.max_score;
  const bool prune = opts.prune;
  struct State {
    std::int64_t full = 0;
    std::set<CanonicalKey> keys;
  };
  auto states = run_split<State>(tau, opts, [&](SearchGrid& grid, std::size_t depth,
                                                std::int64_t prefix_weight, State& st) {
    search(
        grid, depth, prefix_weight,
        [&](std::int64_t bound) { return !prune || bound >= target; },
        [&](std::int64_t weight) {
          if (grid.score() != target) return;
          st.full += weight;
          st.keys.insert(grid.key());
        });
  });
  std::set<CanonicalKey> all;
  for (auto& st : states) {
    report.full_count += st.full;
    all.merge(st.keys);
  }
  report.canonical_count = static_cast<std::int64_t>(all.size());
  return report;
}

std::vector<CountReport> count_table(std::span<const Domino> tau, const SearchOptions& opts) {
  std::vector<CountReport> out;
  for (std::size_t len = 1; len <= tau.size(); ++len) {
    out.push_back(count_max_score(tau.first(len), opts));
  }
  return out;
}

}  // namespace kingdomino
