#ifndef CUBEPACK_LABEL_HPP
#define CUBEPACK_LABEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cubepack {

// A cube label is a point of {0,1,2,3}^d naming the translate x + [0,2)^d of
// the torus R^d / 4Z^d. It is stored as a base-4 integer with coordinate 0 as
// the most significant digit, two bits per digit.
using Code = std::uint16_t;

inline constexpr int kMaxDim = 8;

// Number of labels 4^d.
constexpr std::size_t label_count(int dim) { return std::size_t{1} << (2 * dim); }

constexpr int digit_shift(int dim, int coord) { return 2 * (dim - 1 - coord); }

constexpr int digit(int dim, Code code, int coord) {
  return (code >> digit_shift(dim, coord)) & 3;
}

constexpr Code with_digit(int dim, Code code, int coord, int value) {
  const int s = digit_shift(dim, coord);
  return static_cast<Code>((code & ~(3u << s)) | (static_cast<unsigned>(value & 3) << s));
}

// Two cubes are disjoint iff some coordinate differs by exactly 2 mod 4, i.e.
// some 2-bit digit of x ^ y equals 0b10. Digits above the dimension are zero
// in both codes, so the test does not need d.
constexpr bool codes_overlap(Code x, Code y) {
  constexpr unsigned kLow = 0x5555u;
  const unsigned z = static_cast<unsigned>(x ^ y);
  const unsigned hi = (z >> 1) & kLow;
  const unsigned lo = z & kLow;
  return (hi & ~lo) == 0;
}

// Digitwise addition mod 4.
constexpr Code add_codes(Code x, Code y) {
  constexpr unsigned kHigh = 0xAAAAu;
  const unsigned ux = x, uy = y;
  return static_cast<Code>(((ux & ~kHigh) + (uy & ~kHigh)) ^ ((ux ^ uy) & kHigh));
}

// Code of x + 2 e_coord.
constexpr Code opposite_in(int dim, Code code, int coord) {
  return static_cast<Code>(code ^ (2u << digit_shift(dim, coord)));
}

// Code of x + delta e_coord.
constexpr Code shift_in(int dim, Code code, int coord, int delta) {
  return with_digit(dim, code, coord, (digit(dim, code, coord) + delta) & 3);
}

void check_dim(int dim);

Code encode(int dim, std::span<const int> coords);
std::vector<int> decode(int dim, Code code);

// A label together with its dimension; the checked, user-facing form.
class CubeLabel {
 public:
  CubeLabel(int dim, Code code);
  CubeLabel(std::span<const int> coords);
  CubeLabel(std::initializer_list<int> coords);

  int dim() const { return dim_; }
  Code code() const { return code_; }
  int operator[](int coord) const { return digit(dim_, code_, coord); }
  std::vector<int> coords() const { return decode(dim_, code_); }

  friend bool operator==(const CubeLabel&, const CubeLabel&) = default;

 private:
  int dim_;
  Code code_;
};

// Window corners z use the same encoding as labels.
using WindowCorner = CubeLabel;

// Throws std::invalid_argument on dimension mismatch.
bool overlaps(const CubeLabel& x, const CubeLabel& y);

}  // namespace cubepack

#endif  // CUBEPACK_LABEL_HPP
