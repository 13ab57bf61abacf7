#ifndef CUBEPACK_CODE_SET_HPP
#define CUBEPACK_CODE_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cubepack/label.hpp"

namespace cubepack {

// Dense bitset over the 4^d labels of one dimension.
class CodeSet {
 public:
  CodeSet() = default;
  explicit CodeSet(int dim, bool filled = false);

  int dim() const { return dim_; }
  std::size_t universe() const { return label_count(dim_); }

  bool test(Code c) const { return (words_[c >> 6] >> (c & 63)) & 1u; }
  void set(Code c) { words_[c >> 6] |= std::uint64_t{1} << (c & 63); }
  void reset(Code c) { words_[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }

  CodeSet& operator&=(const CodeSet& other);
  CodeSet& operator|=(const CodeSet& other);
  CodeSet& subtract(const CodeSet& other);

  std::size_t count() const;
  bool empty() const;
  // Size of the intersection with other, without materializing it.
  std::size_t count_and(const CodeSet& other) const;

  // Position of the k-th set bit (0-based); k must be < count().
  Code nth(std::size_t k) const;

  std::vector<Code> to_vector() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<Code>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const CodeSet&, const CodeSet&) = default;

 private:
  int dim_ = 0;
  std::vector<std::uint64_t> words_;
};

// Rows of G_d: for each label, the set of labels whose cubes are disjoint
// from it. Materialized for d up to the threshold, computed per call above.
class CompatibilityGraph {
 public:
  static constexpr int kDefaultDenseThreshold = 5;

  explicit CompatibilityGraph(int dim, int dense_threshold = kDefaultDenseThreshold);

  int dim() const { return dim_; }
  bool dense() const { return !rows_.empty(); }

  // Labels disjoint from x.
  CodeSet compatible(Code x) const;
  // Restricts candidates to labels disjoint from x.
  void restrict(CodeSet& candidates, Code x) const;
  // |candidates minus compatible(x)|, the candidates that x would eliminate.
  std::size_t eliminated(const CodeSet& candidates, Code x) const;

  // Labels disjoint from every member of labels.
  CodeSet free_set(std::span<const Code> labels) const;

 private:
  int dim_;
  std::vector<CodeSet> rows_;
};

}  // namespace cubepack

#endif  // CUBEPACK_CODE_SET_HPP
