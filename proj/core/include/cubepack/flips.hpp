#ifndef CUBEPACK_FLIPS_HPP
#define CUBEPACK_FLIPS_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubepack/enumeration.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/symmetry.hpp"

namespace cubepack {

// The face-to-face pair {label, label + 2 e_coord}, named by the member whose
// coordinate `coord` is 0 or 1.
struct FlipMove {
  Code label = 0;
  int coord = 0;

  friend bool operator==(const FlipMove&, const FlipMove&) = default;
  friend auto operator<=>(const FlipMove&, const FlipMove&) = default;
};

// Every flippable pair of the tiling, once each. Throws std::invalid_argument
// if t is not a tiling.
std::vector<FlipMove> flip_moves(const Packing& t);

// Replaces {x, x + 2e_i} by {x + e_i, x + 3e_i}. Throws std::invalid_argument
// if the pair is not present.
Packing apply_flip(const Packing& t, const FlipMove& move);

struct FlipGraph {
  int dim = 0;
  // Canonical keys of the reached tiling orbits, sorted.
  std::vector<CanonicalKey> orbits;
  // Unordered orbit pairs (indices into orbits, first < second). Flips
  // between isomorphic tilings are not recorded.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Thrown when the state cap is reached; carries what was explored so far and
// the unexpanded frontier.
class PartialExplorationError : public ResourceLimitError {
 public:
  PartialExplorationError(const std::string& what, FlipGraph partial, std::vector<CanonicalKey> frontier)
      : ResourceLimitError(what), partial_(std::move(partial)), frontier_(std::move(frontier)) {}

  const FlipGraph& partial() const { return partial_; }
  const std::vector<CanonicalKey>& frontier() const { return frontier_; }

 private:
  FlipGraph partial_;
  std::vector<CanonicalKey> frontier_;
};

struct ExploreOptions {
  // Maximum number of visited states; 0 disables the cap.
  std::size_t state_cap = 0;
  // Deduplicate raw tilings instead of orbits (validation mode for small d);
  // orbits and edges are still reported at the orbit level.
  bool raw_states = false;
};

// Breadth-first search over flips from start, deduplicating by canonical key.
FlipGraph explore_component(const Packing& start, const ExploreOptions& options = {});

}  // namespace cubepack

#endif  // CUBEPACK_FLIPS_HPP
