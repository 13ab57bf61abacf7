#ifndef CUBEPACK_ANALYSIS_HPP
#define CUBEPACK_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubepack/enumeration.hpp"
#include "cubepack/label.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/rng.hpp"
#include "cubepack/symmetry.hpp"

namespace cubepack {

using Rational = boost::multiprecision::cpp_rational;

// "p/q", always with an explicit denominator.
std::string format_rational(const Rational& r);
// Accepts "p/q" or "p".
Rational parse_rational(const std::string& text);

// ---------------------------------------------------------------------------
// Window counts and moments

// Number of cubes of p inside the window z + [0,4)^d, i.e. labels x with
// z_i != x_i + 1 (mod 4) for every i.
int window_count(const Packing& p, Code z);
int window_count(const Packing& p, const WindowCorner& z);

// All 4^d window counts, indexed by corner code. Each label is pushed into
// its 3^d windows, the corners x - u for u in {0,1,2}^d.
class WindowCounter {
 public:
  explicit WindowCounter(int dim);

  int dim() const { return dim_; }
  std::vector<int> counts(std::span<const Code> labels) const;
  // Sum of N_z and of N_z^2 over all corners.
  std::pair<std::uint64_t, std::uint64_t> power_sums(std::span<const Code> labels) const;

 private:
  int dim_;
  std::vector<Code> back_offsets_;  // -u digitwise
};

struct MomentReport {
  int dim = 0;
  std::size_t size = 0;
  int deficit = 0;
  Rational m1;
  Rational m2;
  Rational m2_lower_bound;
  std::vector<int> window_counts;

  // "d=.. n=.. delta=.. m1=p/q m2=p/q bound=p/q".
  std::string to_row() const;
};

// Throws std::logic_error if m1 differs from (3/4)^d N.
MomentReport moments(const Packing& p);
MomentReport moments(const Packing& p, const WindowCounter& counter);

// (3/4)^d N + N(N-1)/2^d + d(2q(q-1) + rq)/2^d with N = 4q + r.
Rational m2_lower_bound(int dim, std::size_t size);

struct PairWindowStat {
  Code x = 0;
  Code y = 0;
  int mu = 0;                 // coordinates where x and y agree
  std::uint64_t formula = 0;  // 3^mu * 2^(d - mu)
  std::uint64_t brute = 0;    // corners whose window holds both cubes
};

struct WindowPairStats {
  std::vector<PairWindowStat> pairs;
  // Per coordinate l: sum over u of c(c-1)/2 where c counts cubes with x_l = u.
  std::vector<std::uint64_t> column_pairs;
  std::uint64_t column_bound = 0;  // 2q(q-1) + rq

  bool formula_matches() const;
  bool columns_meet_bound() const;
};

WindowPairStats window_pair_stats(const Packing& p);

// ---------------------------------------------------------------------------
// Blocking sets

// True iff every label of dimension dim overlaps some member of s.
bool is_blocking(int dim, std::span<const Code> s);

struct BlockingSearchOptions {
  // Maximum orbit representatives per level; 0 disables the cap.
  std::size_t representative_cap = 0;
};

// Canonical keys of all blocking sets of exactly `size` distinct labels, up to
// symmetry. Throws ResourceLimitError when the cap is exceeded.
std::vector<CanonicalKey> min_blocking_search(int dim, int size, const BlockingSearchOptions& options = {});

// Lower bounds h(d+1) >= floor((4h(d) - 1)/3) + 1, iterated `steps` times.
std::vector<int> h_recurrence(int h, int steps);

// ---------------------------------------------------------------------------
// Layers and holes

// Cubes with x_coord in {layer, layer+1 mod 4}, with that coordinate removed.
Packing induced_layer(const Packing& p, int coord, int layer);

struct LayerDeficits {
  std::array<int, 4> delta{};

  int alternating_sum() const { return delta[0] - delta[1] + delta[2] - delta[3]; }
  int total() const { return delta[0] + delta[1] + delta[2] + delta[3]; }
};

// delta_j = 2^(d-1) - |induced_layer(p, coord, j)|.
LayerDeficits layer_deficits(const Packing& p, int coord);

// Unit cells u not covered by any cube, where x covers u iff u - x is in
// {0,1}^d. Sorted codes.
std::vector<Code> hole_cells(const Packing& p);

// ---------------------------------------------------------------------------
// Densities

// Nonnegative function on {0,1,2,3}^d, indexed by code.
class DensityFunction {
 public:
  DensityFunction(int dim, std::vector<Rational> values);

  static DensityFunction uniform(int dim);
  // Indicator of a tiling; throws std::invalid_argument otherwise.
  static DensityFunction indicator(const Packing& tiling);

  int dim() const { return dim_; }
  const Rational& operator()(Code x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

  // Sum over x + {0,1}^d.
  Rational cell_sum(Code x) const;
  // Nonnegative with every cell sum equal to one.
  bool in_space() const;
  // Sum over z + {0,1,2}^d.
  Rational window_sum(Code z) const;
  // Mean over z of window_sum(z)^2.
  Rational second_moment() const;

  friend bool operator==(const DensityFunction&, const DensityFunction&) = default;

 private:
  int dim_;
  std::vector<Rational> values_;
};

DensityFunction density_from_packing(const Packing& tiling);
Rational density_window_sum(const DensityFunction& f, Code z);

// M_i(f)(x) = f(x) + f(x + e_i) if x_i in {0,2}, else 0.
DensityFunction merge(const DensityFunction& f, int coord);

// Convex mix of a few random tilings (flip walks from the regular tiling
// under a random symmetry) and the uniform density, with random rational
// weights.
DensityFunction random_density(int dim, Rng& rng);

// A tiling reached by `steps` random flips from the regular tiling, then
// moved by a random symmetry.
Packing random_tiling(int dim, Rng& rng, int steps);

// (x0+x1+x2)^2 + (x1+x2+x3)^2 + (x2+x3+x0)^2 + (x3+x0+x1)^2
//   <= 2(x0+x1+x2+x3)^2 + (x0+x1)^2 + (x2+x3)^2.
// Throws std::invalid_argument on negative input.
bool key_inequality_check(const Rational& x0, const Rational& x1, const Rational& x2, const Rational& x3);

}  // namespace cubepack

#endif  // CUBEPACK_ANALYSIS_HPP
