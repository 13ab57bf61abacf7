#include "cubepack/packing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cubepack {

namespace {

void validate_codes(int dim, std::span<const Code> codes) {
  for (Code c : codes) {
    if (c >= label_count(dim)) {
      throw std::invalid_argument("label code " + std::to_string(c) + " out of range for d=" +
                                  std::to_string(dim));
    }
  }
  for (std::size_t i = 1; i < codes.size(); ++i) {
    if (codes[i] == codes[i - 1]) throw std::invalid_argument("duplicate label in packing");
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      if (codes_overlap(codes[i], codes[j])) {
        throw std::invalid_argument("labels " + std::to_string(codes[i]) + " and " +
                                    std::to_string(codes[j]) + " overlap");
      }
    }
  }
}

}  // namespace

Packing::Packing(int dim) : dim_(dim) { check_dim(dim); }

Packing::Packing(int dim, std::vector<Code> codes) : dim_(dim), codes_(std::move(codes)) {
  check_dim(dim);
  std::sort(codes_.begin(), codes_.end());
  validate_codes(dim_, codes_);
}

Packing::Packing(int dim, std::initializer_list<std::initializer_list<int>> coords)
    : dim_(dim) {
  check_dim(dim);
  for (const auto& c : coords) codes_.push_back(encode(dim, std::span<const int>(c.begin(), c.size())));
  std::sort(codes_.begin(), codes_.end());
  validate_codes(dim_, codes_);
}

Packing Packing::from_coords(int dim, const std::vector<std::vector<int>>& coords) {
  std::vector<Code> codes;
  codes.reserve(coords.size());
  for (const auto& c : coords) codes.push_back(encode(dim, c));
  return Packing(dim, std::move(codes));
}

Packing Packing::unchecked(int dim, std::vector<Code> sorted_codes) {
  Packing p(dim);
  p.codes_ = std::move(sorted_codes);
  return p;
}

bool Packing::contains(Code c) const { return std::binary_search(codes_.begin(), codes_.end(), c); }

Packing Packing::with(Code c) const {
  if (c >= label_count(dim_)) throw std::invalid_argument("label code out of range");
  for (Code x : codes_) {
    if (codes_overlap(x, c)) throw std::invalid_argument("added label overlaps the packing");
  }
  std::vector<Code> out = codes_;
  out.insert(std::upper_bound(out.begin(), out.end(), c), c);
  return unchecked(dim_, std::move(out));
}

Packing Packing::without(Code c) const {
  std::vector<Code> out = codes_;
  auto it = std::lower_bound(out.begin(), out.end(), c);
  if (it == out.end() || *it != c) throw std::invalid_argument("label not in packing");
  out.erase(it);
  return unchecked(dim_, std::move(out));
}

std::vector<std::vector<int>> Packing::coords() const {
  std::vector<std::vector<int>> out;
  out.reserve(codes_.size());
  for (Code c : codes_) out.push_back(decode(dim_, c));
  return out;
}

bool is_packing(int dim, std::span<const Code> codes) {
  check_dim(dim);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] >= label_count(dim)) return false;
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      if (codes_overlap(codes[i], codes[j])) return false;
    }
  }
  return true;
}

std::vector<Code> free_labels(const Packing& p) {
  std::vector<Code> out;
  const auto n = label_count(p.dim());
  for (std::size_t y = 0; y < n; ++y) {
    const auto c = static_cast<Code>(y);
    bool ok = true;
    for (Code x : p.codes()) {
      if (codes_overlap(x, c)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(c);
  }
  return out;
}

bool is_non_extendible(const Packing& p) { return free_labels(p).empty(); }

bool is_tiling(const Packing& p) { return p.size() == (std::size_t{1} << p.dim()); }

Packing regular_tiling(int dim) {
  check_dim(dim);
  std::vector<Code> codes;
  const auto n = std::size_t{1} << dim;
  codes.reserve(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    unsigned code = 0;
    for (int i = 0; i < dim; ++i) {
      code = (code << 2) | (((mask >> (dim - 1 - i)) & 1u) ? 2u : 0u);
    }
    codes.push_back(static_cast<Code>(code));
  }
  std::sort(codes.begin(), codes.end());
  return Packing::unchecked(dim, std::move(codes));
}

Packing product_packing(const Packing& p, const Packing& q) {
  const int dim = p.dim() + q.dim();
  check_dim(dim);
  std::vector<Code> codes;
  codes.reserve(p.size() * q.size());
  for (Code a : p.codes()) {
    for (Code b : q.codes()) {
      codes.push_back(static_cast<Code>((static_cast<unsigned>(a) << (2 * q.dim())) | b));
    }
  }
  std::sort(codes.begin(), codes.end());
  return Packing::unchecked(dim, std::move(codes));
}

Packing lift(const Packing& p, const Packing& tiling) {
  if (p.dim() != tiling.dim()) throw std::invalid_argument("lift: dimension mismatch");
  if (!is_tiling(tiling)) throw std::invalid_argument("lift: second argument is not a tiling");
  const int dim = p.dim() + 1;
  check_dim(dim);
  std::vector<Code> codes;
  codes.reserve(p.size() + tiling.size());
  for (Code x : p.codes()) codes.push_back(static_cast<Code>(static_cast<unsigned>(x) << 2));
  for (Code y : tiling.codes()) codes.push_back(static_cast<Code>((static_cast<unsigned>(y) << 2) | 2u));
  std::sort(codes.begin(), codes.end());
  return Packing::unchecked(dim, std::move(codes));
}

Packing chiral_packing_3d() { return Packing(3, {{0, 0, 0}, {3, 2, 3}, {2, 1, 1}, {1, 3, 2}}); }

}  // namespace cubepack
