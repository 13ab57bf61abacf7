#ifndef CUBEPACK_PACKING_HPP
#define CUBEPACK_PACKING_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cubepack/label.hpp"

namespace cubepack {

// A set of pairwise disjoint cube labels in one dimension, kept sorted by
// code. Construction validates the packing property.
class Packing {
 public:
  explicit Packing(int dim);
  Packing(int dim, std::vector<Code> codes);
  Packing(int dim, std::initializer_list<std::initializer_list<int>> coords);

  static Packing from_coords(int dim, const std::vector<std::vector<int>>& coords);

  // Fast path for hot loops: caller guarantees sorted, distinct and pairwise
  // disjoint codes.
  static Packing unchecked(int dim, std::vector<Code> sorted_codes);

  int dim() const { return dim_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  std::span<const Code> codes() const { return codes_; }
  bool contains(Code c) const;

  // Deficit 2^d - N.
  int deficit() const { return (1 << dim_) - static_cast<int>(codes_.size()); }

  Packing with(Code c) const;
  Packing without(Code c) const;

  std::vector<std::vector<int>> coords() const;

  friend bool operator==(const Packing&, const Packing&) = default;
  friend auto operator<=>(const Packing&, const Packing&) = default;

 private:
  int dim_;
  std::vector<Code> codes_;
};

// True iff the labels are distinct and pairwise disjoint.
bool is_packing(int dim, std::span<const Code> codes);

// Labels y disjoint from every cube of p. Empty iff p is non-extendible.
std::vector<Code> free_labels(const Packing& p);

bool is_non_extendible(const Packing& p);
bool is_tiling(const Packing& p);

// {0,2}^d.
Packing regular_tiling(int dim);

// All concatenations (a, b) with a in p and b in q.
Packing product_packing(const Packing& p, const Packing& q);

// {(x, 0) : x in p} U {(y, 2) : y in tiling}. Throws std::invalid_argument if
// tiling is not a tiling of the same dimension.
Packing lift(const Packing& p, const Packing& tiling);

// The unique (up to symmetry) non-extendible 3-dimensional packing with four
// cubes: {(0,0,0), (3,2,3), (2,1,1), (1,3,2)}.
Packing chiral_packing_3d();

}  // namespace cubepack

#endif  // CUBEPACK_PACKING_HPP
