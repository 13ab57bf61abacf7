#include "cubepack/flips.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cubepack {

namespace {

void require_tiling(const Packing& t) {
  if (!is_tiling(t)) throw std::invalid_argument("flip: input is not a tiling");
}

}  // namespace

std::vector<FlipMove> flip_moves(const Packing& t) {
  require_tiling(t);
  std::vector<FlipMove> moves;
  const int d = t.dim();
  for (Code x : t.codes()) {
    for (int i = 0; i < d; ++i) {
      if (digit(d, x, i) > 1) continue;
      if (t.contains(opposite_in(d, x, i))) moves.push_back({x, i});
    }
  }
  std::sort(moves.begin(), moves.end());
  return moves;
}

Packing apply_flip(const Packing& t, const FlipMove& move) {
  require_tiling(t);
  const int d = t.dim();
  if (move.coord < 0 || move.coord >= d) throw std::invalid_argument("flip: bad coordinate");
  const Code x = move.label;
  const Code partner = opposite_in(d, x, move.coord);
  if (!t.contains(x) || !t.contains(partner)) throw std::invalid_argument("flip: pair not in tiling");
  std::vector<Code> codes;
  codes.reserve(t.size());
  for (Code c : t.codes()) {
    if (c != x && c != partner) codes.push_back(c);
  }
  codes.push_back(shift_in(d, x, move.coord, 1));
  codes.push_back(shift_in(d, partner, move.coord, 1));
  std::sort(codes.begin(), codes.end());
  return Packing::unchecked(d, std::move(codes));
}

FlipGraph explore_component(const Packing& start, const ExploreOptions& options) {
  require_tiling(start);
  const int d = start.dim();
  Canonicalizer canon(d);
  auto key_of = [&](const Packing& t) {
    const auto k = canon.canonicalize(t.codes());
    return CanonicalKey{d, std::vector<Code>(k.begin(), k.end())};
  };

  std::map<CanonicalKey, std::size_t> orbit_index;
  std::vector<CanonicalKey> orbit_keys;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::vector<Code>> raw_seen;
  std::deque<Packing> frontier;

  auto index_of = [&](const CanonicalKey& k) {
    auto [it, inserted] = orbit_index.emplace(k, orbit_keys.size());
    if (inserted) orbit_keys.push_back(k);
    return std::make_pair(it->second, inserted);
  };

  auto finish = [&]() {
    FlipGraph g;
    g.dim = d;
    // Re-index in key order for deterministic output.
    std::vector<std::size_t> order(orbit_keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return orbit_keys[a] < orbit_keys[b]; });
    std::vector<std::size_t> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      rank[order[r]] = r;
      g.orbits.push_back(orbit_keys[order[r]]);
    }
    for (auto [a, b] : edges) {
      auto ra = rank[a], rb = rank[b];
      g.edges.emplace_back(std::min(ra, rb), std::max(ra, rb));
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
  };

  const auto start_key = key_of(start);
  index_of(start_key);
  if (options.raw_states) {
    raw_seen.insert(std::vector<Code>(start.codes().begin(), start.codes().end()));
    frontier.push_back(start);
  } else {
    frontier.push_back(Packing::unchecked(d, start_key.codes));
  }
  std::size_t visited = 1;

  while (!frontier.empty()) {
    const Packing t = std::move(frontier.front());
    frontier.pop_front();
    const std::size_t from = orbit_index.at(key_of(t));
    for (const auto& move : flip_moves(t)) {
      const Packing next = apply_flip(t, move);
      const auto k = key_of(next);
      const auto [to, new_orbit] = index_of(k);
      if (to != from) edges.emplace(std::min(from, to), std::max(from, to));
      bool enqueue = false;
      if (options.raw_states) {
        enqueue = raw_seen.insert(std::vector<Code>(next.codes().begin(), next.codes().end())).second;
      } else {
        enqueue = new_orbit;
      }
      if (!enqueue) continue;
      ++visited;
      frontier.push_back(options.raw_states ? next : Packing::unchecked(d, k.codes));
      if (options.state_cap != 0 && visited > options.state_cap) {
        std::vector<CanonicalKey> pending;
        for (const auto& p : frontier) pending.push_back(key_of(p));
        throw PartialExplorationError("flip exploration exceeded state cap of " +
                                          std::to_string(options.state_cap),
                                      finish(), std::move(pending));
      }
    }
  }
  return finish();
}

}  // namespace cubepack
