#ifndef CUBEPACK_ENUMERATION_HPP
#define CUBEPACK_ENUMERATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepack/code_set.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/symmetry.hpp"

namespace cubepack {

// Thrown when a configured cap on stored states is exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All orbits of packings with `size` cubes, one representative per orbit.
// Each representative is stored as its own canonical image, so the stored
// codes are the orbit's canonical key. Representatives are kept sorted.
class OrbitLevel {
 public:
  OrbitLevel(int dim, int size) : dim_(dim), size_(size) {}
  OrbitLevel(int dim, int size, std::vector<Code> flat_sorted_keys);

  int dim() const { return dim_; }
  int size() const { return size_; }
  std::size_t count() const { return size_ == 0 ? (has_empty_ ? 1 : 0) : flat_.size() / static_cast<std::size_t>(size_); }

  std::span<const Code> representative(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(size_), static_cast<std::size_t>(size_)};
  }
  Packing packing(std::size_t i) const;
  CanonicalKey key(std::size_t i) const;
  bool contains(const CanonicalKey& key) const;

  // Level N = 0: the empty packing.
  static OrbitLevel initial(int dim);

 private:
  int dim_;
  int size_;
  bool has_empty_ = false;
  std::vector<Code> flat_;
};

struct EnumerationOptions {
  // Largest packing size to enumerate; negative means 2^d.
  int max_size = -1;
  unsigned threads = 1;
  // Maximum representatives per level; 0 disables the cap.
  std::size_t representative_cap = 0;
  // Only keep P + {y} when y is, up to automorphism, the label removed by the
  // canonical deletion (the preimage of the canonical image's largest code).
  // Produces the same levels with fewer duplicate insertions.
  bool canonical_augmentation = false;
};

// Canonicalizes P + {y} for every representative P and free label y.
OrbitLevel extend_level(const OrbitLevel& level, const EnumerationOptions& options = {});

// Non-extendibility flag of each representative.
std::vector<bool> non_extendible_flags(const OrbitLevel& level);

struct LevelCounts {
  int size = 0;
  std::uint64_t orbits = 0;
  std::uint64_t non_extendible = 0;
};

struct CountTable {
  int dim = 0;
  std::vector<LevelCounts> levels;

  std::uint64_t tiling_orbits() const;
  std::uint64_t non_extendible_at(int size) const;
  std::uint64_t orbits_at(int size) const;

  // Aligned, human-readable table.
  std::string to_text() const;
};

// Called after each level is complete, with the level's non-extendible flags.
using LevelVisitor = std::function<void(const OrbitLevel&, const std::vector<bool>&)>;

// Runs extend_level from the empty packing up to options.max_size.
CountTable enumerate_all(int dim, const EnumerationOptions& options = {},
                         const LevelVisitor& visitor = {});

// Searches for a tiling containing a given packing. Exhaustive backtracking:
// branches on the free label with the fewest compatible free labels (ties by
// smallest code), first including then excluding it. Deterministic. Reuse one
// instance for many queries of the same dimension.
class TilingCompleter {
 public:
  explicit TilingCompleter(int dim);

  int dim() const { return dim_; }
  std::optional<Packing> complete(const Packing& p) const;

 private:
  bool search(std::vector<Code>& chosen, const CodeSet& covered, CodeSet free) const;

  int dim_;
  CompatibilityGraph graph_;
  std::vector<CodeSet> cells_;  // unit cells covered by each label
};

std::optional<Packing> complete_to_tiling(const Packing& p);

}  // namespace cubepack

#endif  // CUBEPACK_ENUMERATION_HPP
