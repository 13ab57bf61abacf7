#ifndef CUBEPACK_SYMMETRY_HPP
#define CUBEPACK_SYMMETRY_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cubepack/label.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/rng.hpp"

namespace cubepack {

// t -> a*t + b (mod 4) with a in {1, 3}. These are the eight bijections of
// Z_4 that preserve "difference = 2".
struct AffineMap {
  int a = 1;
  int b = 0;

  int operator()(int t) const { return (a * t + b) & 3; }
  AffineMap then(const AffineMap& outer) const {
    return {(outer.a * a) & 3, (outer.a * b + outer.b) & 3};
  }
  AffineMap inverse() const { return {a, (-a * b) & 3}; }

  // Index in [0, 8): (a == 3) * 4 + b.
  int index() const { return (a == 3 ? 4 : 0) + b; }
  static AffineMap from_index(int i) { return {(i & 4) ? 3 : 1, i & 3}; }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// An element of Sym(G_d): x is sent to y with y[perm[i]] = maps[i](x[i]).
// Composition satisfies (g * h).apply(x) == g.apply(h.apply(x)).
class Symmetry {
 public:
  static Symmetry identity(int dim);
  Symmetry(std::vector<int> perm, std::vector<AffineMap> maps);

  int dim() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<AffineMap>& maps() const { return maps_; }

  Code apply(Code x) const;
  // Throws std::invalid_argument on dimension mismatch.
  CubeLabel apply(const CubeLabel& x) const;
  Packing apply(const Packing& p) const;
  // Image of an arbitrary label set, sorted.
  std::vector<Code> apply(std::span<const Code> codes) const;

  Symmetry inverse() const;

  // Generators: coordinate transposition, unit translation and reflection of
  // one coordinate.
  static Symmetry transposition(int dim, int i, int j);
  static Symmetry translation(int dim, int coord);
  static Symmetry reflection(int dim, int coord);
  static Symmetry random(int dim, Rng& rng);

  friend Symmetry operator*(const Symmetry& g, const Symmetry& h);
  friend bool operator==(const Symmetry&, const Symmetry&) = default;

 private:
  std::vector<int> perm_;
  std::vector<AffineMap> maps_;
};

// d! * 8^d.
std::uint64_t group_order(int dim);

// Every element of the group, for small d (throws above d = 4).
std::vector<Symmetry> all_symmetries(int dim);

// Orbit representative of a label set: the sorted codes of one distinguished
// image. Equal keys <=> the sets lie in one orbit.
struct CanonicalKey {
  int dim = 0;
  std::vector<Code> codes;

  std::size_t size() const { return codes.size(); }

  // "d:c1,c2,..." with decimal codes.
  std::string serialize() const;
  static CanonicalKey parse(const std::string& text);

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalResult {
  CanonicalKey key;
  // |Stab(S)|: the number of group elements fixing the set.
  std::uint64_t stabilizer_order = 0;
  // Some g with g.apply(S) == key.
  Symmetry witness = Symmetry::identity(1);
};

// Computes canonical images by coordinate-by-coordinate refinement.
//
// Images are compared level by level: at level k the image's labels are
// truncated to their k+1 leading digits and the sorted list of those
// prefixes is compared lexicographically. The canonical image is the image
// that is smallest in this order; at the last level the comparison is on the
// full sorted code list, so the minimum is a single label set.
//
// The search assigns target coordinates 0, 1, ... in turn. At each level only
// the partial assignments achieving the minimal prefix list survive; partial
// assignments that give every label the same prefix and use the same source
// coordinates are merged with a multiplicity, which is how the stabilizer
// order is obtained without enumerating the stabilizer.
//
// Instances hold scratch buffers and are not thread-safe; use one per thread.
class Canonicalizer {
 public:
  explicit Canonicalizer(int dim);

  int dim() const { return dim_; }

  // Canonical sorted codes of the image of labels. Returned span is valid
  // until the next call.
  std::span<const Code> canonicalize(std::span<const Code> labels);

  std::uint64_t stabilizer_order() const { return stabilizer_; }
  Symmetry witness() const;
  // Positions (indices into the last input) of the labels that some minimizing
  // group element sends to the largest code of the canonical image.
  std::vector<std::size_t> preimages_of_last() const;

 private:
  struct State {
    std::uint32_t used = 0;
    std::uint64_t mult = 1;
    std::uint32_t prefix_offset = 0;  // into prefixes_
    std::uint32_t path_offset = 0;    // into paths_
  };

  void reset(std::size_t n);

  int dim_;
  std::size_t n_ = 0;
  std::vector<std::uint8_t> columns_;   // columns_[c * n + j] = digit c of label j
  std::vector<State> states_, next_;
  std::vector<std::uint32_t> prefixes_, next_prefixes_;
  std::vector<std::uint8_t> paths_, next_paths_;  // per level: source * 8 + map
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> group_start_;
  std::vector<std::uint32_t> best_sig_, sig_;
  std::vector<Code> key_;
  std::uint64_t stabilizer_ = 0;
};

CanonicalResult canonicalize(int dim, std::span<const Code> labels);
CanonicalKey canonical_form(int dim, std::span<const Code> labels);
CanonicalKey canonical_form(const Packing& p);

// Group-invariant summary used to reject non-isomorphic pairs quickly: size,
// dimension and the histogram over label pairs of the number of equal
// coordinates. Equal fingerprints do not imply isomorphism.
struct Fingerprint {
  int dim = 0;
  std::size_t size = 0;
  std::vector<std::uint64_t> equal_coordinate_histogram;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint invariant_fingerprint(int dim, std::span<const Code> labels);
Fingerprint invariant_fingerprint(const Packing& p);

bool are_isomorphic(const Packing& p, const Packing& q);

}  // namespace cubepack

#endif  // CUBEPACK_SYMMETRY_HPP
