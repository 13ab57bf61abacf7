#include "cubepack/code_set.hpp"

#include <cassert>

namespace cubepack {

CodeSet::CodeSet(int dim, bool filled)
    : dim_(dim), words_((label_count(dim) + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
  const std::size_t tail = label_count(dim) % 64;
  if (filled && tail != 0) words_.back() = (std::uint64_t{1} << tail) - 1;
}

CodeSet& CodeSet::operator&=(const CodeSet& other) {
  assert(words_.size() == other.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

CodeSet& CodeSet::operator|=(const CodeSet& other) {
  assert(words_.size() == other.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

CodeSet& CodeSet::subtract(const CodeSet& other) {
  assert(words_.size() == other.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::size_t CodeSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool CodeSet::empty() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t CodeSet::count_and(const CodeSet& other) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return n;
}

Code CodeSet::nth(std::size_t k) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const auto c = static_cast<std::size_t>(std::popcount(words_[w]));
    if (k < c) {
      std::uint64_t bits = words_[w];
      for (std::size_t j = 0; j < k; ++j) bits &= bits - 1;
      return static_cast<Code>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
    k -= c;
  }
  assert(false && "CodeSet::nth out of range");
  return 0;
}

std::vector<Code> CodeSet::to_vector() const {
  std::vector<Code> out;
  out.reserve(count());
  for_each([&](Code c) { out.push_back(c); });
  return out;
}

CompatibilityGraph::CompatibilityGraph(int dim, int dense_threshold) : dim_(dim) {
  check_dim(dim);
  if (dim > dense_threshold) return;
  const auto n = label_count(dim);
  rows_.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    CodeSet row(dim);
    for (std::size_t y = 0; y < n; ++y) {
      if (!codes_overlap(static_cast<Code>(x), static_cast<Code>(y))) row.set(static_cast<Code>(y));
    }
    rows_.push_back(std::move(row));
  }
}

CodeSet CompatibilityGraph::compatible(Code x) const {
  if (dense()) return rows_[x];
  CodeSet row(dim_);
  const auto n = label_count(dim_);
  for (std::size_t y = 0; y < n; ++y) {
    if (!codes_overlap(x, static_cast<Code>(y))) row.set(static_cast<Code>(y));
  }
  return row;
}

void CompatibilityGraph::restrict(CodeSet& candidates, Code x) const {
  if (dense()) {
    candidates &= rows_[x];
    return;
  }
  CodeSet copy = candidates;
  copy.for_each([&](Code y) {
    if (codes_overlap(x, y)) candidates.reset(y);
  });
}

std::size_t CompatibilityGraph::eliminated(const CodeSet& candidates, Code x) const {
  if (dense()) return candidates.count() - candidates.count_and(rows_[x]);
  std::size_t n = 0;
  candidates.for_each([&](Code y) { n += codes_overlap(x, y) ? 1 : 0; });
  return n;
}

CodeSet CompatibilityGraph::free_set(std::span<const Code> labels) const {
  CodeSet out(dim_, true);
  for (Code x : labels) restrict(out, x);
  return out;
}

}  // namespace cubepack
