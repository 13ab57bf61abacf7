#include "cubepack/label.hpp"

#include <stdexcept>
#include <string>

namespace cubepack {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("dimension must be in [1, " + std::to_string(kMaxDim) +
                                "], got " + std::to_string(dim));
  }
}

Code encode(int dim, std::span<const int> coords) {
  check_dim(dim);
  if (static_cast<int>(coords.size()) != dim) {
    throw std::invalid_argument("label has " + std::to_string(coords.size()) +
                                " coordinates, expected " + std::to_string(dim));
  }
  unsigned code = 0;
  for (int v : coords) {
    if (v < 0 || v > 3) {
      throw std::invalid_argument("label coordinate out of range: " + std::to_string(v));
    }
    code = (code << 2) | static_cast<unsigned>(v);
  }
  return static_cast<Code>(code);
}

std::vector<int> decode(int dim, Code code) {
  check_dim(dim);
  if (code >= label_count(dim)) {
    throw std::invalid_argument("code " + std::to_string(code) + " out of range for d=" +
                                std::to_string(dim));
  }
  std::vector<int> out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i)] = digit(dim, code, i);
  return out;
}

CubeLabel::CubeLabel(int dim, Code code) : dim_(dim), code_(code) {
  check_dim(dim);
  if (code >= label_count(dim)) {
    throw std::invalid_argument("code out of range for dimension");
  }
}

CubeLabel::CubeLabel(std::span<const int> coords)
    : dim_(static_cast<int>(coords.size())), code_(encode(dim_, coords)) {}

CubeLabel::CubeLabel(std::initializer_list<int> coords)
    : CubeLabel(std::span<const int>(coords.begin(), coords.size())) {}

bool overlaps(const CubeLabel& x, const CubeLabel& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("overlaps: dimension mismatch");
  }
  return codes_overlap(x.code(), y.code());
}

}  // namespace cubepack
