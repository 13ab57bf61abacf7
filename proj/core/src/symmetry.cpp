#include "cubepack/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cubepack {

Symmetry Symmetry::identity(int dim) {
  check_dim(dim);
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  return Symmetry(std::move(perm), std::vector<AffineMap>(static_cast<std::size_t>(dim)));
}

Symmetry::Symmetry(std::vector<int> perm, std::vector<AffineMap> maps)
    : perm_(std::move(perm)), maps_(std::move(maps)) {
  const int d = static_cast<int>(perm_.size());
  check_dim(d);
  if (maps_.size() != perm_.size()) throw std::invalid_argument("symmetry: size mismatch");
  std::vector<bool> seen(perm_.size(), false);
  for (int p : perm_) {
    if (p < 0 || p >= d || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("symmetry: not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  for (auto& m : maps_) {
    if (m.a != 1 && m.a != 3) throw std::invalid_argument("symmetry: multiplier must be 1 or 3");
    m.b &= 3;
  }
}

Code Symmetry::apply(Code x) const {
  const int d = dim();
  unsigned y = 0;
  for (int i = 0; i < d; ++i) {
    const auto v = static_cast<unsigned>(maps_[static_cast<std::size_t>(i)](digit(d, x, i)));
    y |= v << digit_shift(d, perm_[static_cast<std::size_t>(i)]);
  }
  return static_cast<Code>(y);
}

CubeLabel Symmetry::apply(const CubeLabel& x) const {
  if (x.dim() != dim()) throw std::invalid_argument("symmetry: dimension mismatch");
  return CubeLabel(dim(), apply(x.code()));
}

std::vector<Code> Symmetry::apply(std::span<const Code> codes) const {
  std::vector<Code> out;
  out.reserve(codes.size());
  for (Code c : codes) out.push_back(apply(c));
  std::sort(out.begin(), out.end());
  return out;
}

Packing Symmetry::apply(const Packing& p) const {
  if (p.dim() != dim()) throw std::invalid_argument("symmetry: dimension mismatch");
  return Packing::unchecked(dim(), apply(p.codes()));
}

Symmetry Symmetry::inverse() const {
  const auto d = perm_.size();
  std::vector<int> perm(d);
  std::vector<AffineMap> maps(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto j = static_cast<std::size_t>(perm_[i]);
    perm[j] = static_cast<int>(i);
    maps[j] = maps_[i].inverse();
  }
  return Symmetry(std::move(perm), std::move(maps));
}

Symmetry operator*(const Symmetry& g, const Symmetry& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("symmetry: dimension mismatch");
  const auto d = g.perm_.size();
  std::vector<int> perm(d);
  std::vector<AffineMap> maps(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto mid = static_cast<std::size_t>(h.perm_[i]);
    perm[i] = g.perm_[mid];
    maps[i] = h.maps_[i].then(g.maps_[mid]);
  }
  return Symmetry(std::move(perm), std::move(maps));
}

Symmetry Symmetry::transposition(int dim, int i, int j) {
  Symmetry g = identity(dim);
  std::swap(g.perm_.at(static_cast<std::size_t>(i)), g.perm_.at(static_cast<std::size_t>(j)));
  return g;
}

Symmetry Symmetry::translation(int dim, int coord) {
  Symmetry g = identity(dim);
  g.maps_.at(static_cast<std::size_t>(coord)) = {1, 1};
  return g;
}

Symmetry Symmetry::reflection(int dim, int coord) {
  Symmetry g = identity(dim);
  g.maps_.at(static_cast<std::size_t>(coord)) = {3, 0};
  return g;
}

Symmetry Symmetry::random(int dim, Rng& rng) {
  check_dim(dim);
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  std::vector<AffineMap> maps;
  maps.reserve(perm.size());
  for (int i = 0; i < dim; ++i) maps.push_back(AffineMap::from_index(static_cast<int>(rng.below(8))));
  return Symmetry(std::move(perm), std::move(maps));
}

std::uint64_t group_order(int dim) {
  check_dim(dim);
  std::uint64_t order = 1;
  for (int i = 1; i <= dim; ++i) order *= static_cast<std::uint64_t>(i) * 8;
  return order;
}

std::vector<Symmetry> all_symmetries(int dim) {
  check_dim(dim);
  if (dim > 4) throw std::invalid_argument("all_symmetries: group too large above d=4");
  std::vector<Symmetry> out;
  out.reserve(group_order(dim));
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  const std::size_t map_combos = std::size_t{1} << (3 * dim);
  do {
    for (std::size_t combo = 0; combo < map_combos; ++combo) {
      std::vector<AffineMap> maps;
      maps.reserve(perm.size());
      for (int i = 0; i < dim; ++i) {
        maps.push_back(AffineMap::from_index(static_cast<int>((combo >> (3 * i)) & 7)));
      }
      out.emplace_back(perm, std::move(maps));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string CanonicalKey::serialize() const {
  std::string out = std::to_string(dim) + ":";
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(codes[i]);
  }
  return out;
}

CanonicalKey CanonicalKey::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("canonical key: missing ':'");
  CanonicalKey key;
  try {
    key.dim = std::stoi(text.substr(0, colon));
  } catch (const std::exception&) {
    throw std::invalid_argument("canonical key: bad dimension");
  }
  check_dim(key.dim);
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("canonical key: bad code '" + item + "'");
    }
    if (used != item.size() || v >= label_count(key.dim)) {
      throw std::invalid_argument("canonical key: bad code '" + item + "'");
    }
    key.codes.push_back(static_cast<Code>(v));
  }
  if (!std::is_sorted(key.codes.begin(), key.codes.end())) {
    throw std::invalid_argument("canonical key: codes not sorted");
  }
  return key;
}

// ---------------------------------------------------------------------------

Canonicalizer::Canonicalizer(int dim) : dim_(dim) { check_dim(dim); }

void Canonicalizer::reset(std::size_t n) {
  n_ = n;
  states_.clear();
  prefixes_.clear();
  paths_.clear();
  states_.push_back(State{});
  prefixes_.assign(n, 0);
}

std::span<const Code> Canonicalizer::canonicalize(std::span<const Code> labels) {
  const std::size_t n = labels.size();
  const int d = dim_;
  reset(n);

  columns_.resize(static_cast<std::size_t>(d) * n);
  for (int c = 0; c < d; ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      columns_[static_cast<std::size_t>(c) * n + j] = static_cast<std::uint8_t>(digit(d, labels[j], c));
    }
  }

  struct Candidate {
    std::uint32_t state;
    std::uint8_t source;
    std::uint8_t map;
  };
  std::vector<Candidate> candidates;
  std::vector<std::uint32_t> hist;

  for (int level = 0; level < d; ++level) {
    candidates.clear();
    bool have_best = false;

    for (std::uint32_t si = 0; si < states_.size(); ++si) {
      const State& s = states_[si];
      const std::uint32_t* pre = prefixes_.data() + s.prefix_offset;

      // Group labels by current prefix, in increasing prefix order.
      order_.resize(n);
      std::iota(order_.begin(), order_.end(), 0u);
      std::sort(order_.begin(), order_.end(),
                [pre](std::uint32_t a, std::uint32_t b) { return pre[a] < pre[b]; });
      group_start_.clear();
      for (std::size_t pos = 0; pos < n; ++pos) {
        if (pos == 0 || pre[order_[pos]] != pre[order_[pos - 1]]) {
          group_start_.push_back(static_cast<std::uint32_t>(pos));
        }
      }
      const std::size_t groups = group_start_.size();
      group_start_.push_back(static_cast<std::uint32_t>(n));

      for (int c = 0; c < d; ++c) {
        if ((s.used >> c) & 1u) continue;
        const std::uint8_t* col = columns_.data() + static_cast<std::size_t>(c) * n;
        hist.assign(groups * 4, 0);
        for (std::size_t g = 0; g < groups; ++g) {
          for (std::uint32_t pos = group_start_[g]; pos < group_start_[g + 1]; ++pos) {
            ++hist[g * 4 + col[order_[pos]]];
          }
        }
        for (int m = 0; m < 8; ++m) {
          const AffineMap inv = AffineMap::from_index(m).inverse();
          const int src0 = inv(0), src1 = inv(1), src2 = inv(2);
          sig_.resize(groups * 3);
          for (std::size_t g = 0; g < groups; ++g) {
            sig_[g * 3 + 0] = hist[g * 4 + static_cast<std::size_t>(src0)];
            sig_[g * 3 + 1] = hist[g * 4 + static_cast<std::size_t>(src1)];
            sig_[g * 3 + 2] = hist[g * 4 + static_cast<std::size_t>(src2)];
          }
          // A larger digit histogram (more small digits) is a smaller image.
          int cmp = 1;
          if (have_best) {
            cmp = 0;
            for (std::size_t k = 0; k < sig_.size(); ++k) {
              if (sig_[k] != best_sig_[k]) {
                cmp = sig_[k] > best_sig_[k] ? 1 : -1;
                break;
              }
            }
          }
          if (cmp > 0) {
            best_sig_ = sig_;
            have_best = true;
            candidates.clear();
          }
          if (cmp >= 0) {
            candidates.push_back({si, static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(m)});
          }
        }
      }
    }

    // Materialize the surviving partial assignments.
    next_.clear();
    next_prefixes_.clear();
    next_paths_.clear();
    const std::size_t path_len = static_cast<std::size_t>(level) + 1;
    for (const Candidate& cand : candidates) {
      const State& s = states_[cand.state];
      const std::uint32_t* pre = prefixes_.data() + s.prefix_offset;
      const std::uint8_t* col = columns_.data() + static_cast<std::size_t>(cand.source) * n;
      const AffineMap map = AffineMap::from_index(cand.map);
      State t;
      t.used = s.used | (1u << cand.source);
      t.mult = s.mult;
      t.prefix_offset = static_cast<std::uint32_t>(next_prefixes_.size());
      t.path_offset = static_cast<std::uint32_t>(next_paths_.size());
      for (std::size_t j = 0; j < n; ++j) {
        next_prefixes_.push_back(pre[j] * 4 + static_cast<std::uint32_t>(map(col[j])));
      }
      for (std::size_t k = 0; k + 1 < path_len; ++k) next_paths_.push_back(paths_[s.path_offset + k]);
      next_paths_.push_back(static_cast<std::uint8_t>(cand.source * 8 + cand.map));
      next_.push_back(t);
    }

    // Merge assignments that agree on the used coordinates and on every label.
    order_.resize(next_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    auto compare = [&](std::uint32_t a, std::uint32_t b) {
      const State& x = next_[a];
      const State& y = next_[b];
      if (x.used != y.used) return x.used < y.used ? -1 : 1;
      const auto* px = next_prefixes_.data() + x.prefix_offset;
      const auto* py = next_prefixes_.data() + y.prefix_offset;
      for (std::size_t j = 0; j < n; ++j) {
        if (px[j] != py[j]) return px[j] < py[j] ? -1 : 1;
      }
      return 0;
    };
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return compare(a, b) < 0; });

    states_.clear();
    prefixes_.clear();
    paths_.clear();
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const State& src = next_[order_[i]];
      if (i > 0 && compare(order_[i - 1], order_[i]) == 0) {
        states_.back().mult += src.mult;
        continue;
      }
      State t = src;
      t.prefix_offset = static_cast<std::uint32_t>(prefixes_.size());
      t.path_offset = static_cast<std::uint32_t>(paths_.size());
      prefixes_.insert(prefixes_.end(), next_prefixes_.begin() + src.prefix_offset,
                       next_prefixes_.begin() + src.prefix_offset + static_cast<std::ptrdiff_t>(n));
      paths_.insert(paths_.end(), next_paths_.begin() + src.path_offset,
                    next_paths_.begin() + src.path_offset + static_cast<std::ptrdiff_t>(path_len));
      states_.push_back(t);
    }
  }

  stabilizer_ = 0;
  for (const State& s : states_) stabilizer_ += s.mult;
  key_.assign(prefixes_.begin(), prefixes_.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(key_.begin(), key_.end());
  return key_;
}

Symmetry Canonicalizer::witness() const {
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<int> perm(d);
  std::vector<AffineMap> maps(d);
  const State& s = states_.front();
  for (std::size_t level = 0; level < d; ++level) {
    const std::uint8_t step = paths_[s.path_offset + level];
    perm[step / 8] = static_cast<int>(level);
    maps[step / 8] = AffineMap::from_index(step % 8);
  }
  return Symmetry(std::move(perm), std::move(maps));
}

std::vector<std::size_t> Canonicalizer::preimages_of_last() const {
  std::vector<std::size_t> out;
  if (n_ == 0) return out;
  const std::uint32_t last = key_.back();
  for (const State& s : states_) {
    const auto* pre = prefixes_.data() + s.prefix_offset;
    for (std::size_t j = 0; j < n_; ++j) {
      if (pre[j] == last) out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CanonicalResult canonicalize(int dim, std::span<const Code> labels) {
  Canonicalizer canon(dim);
  const auto key = canon.canonicalize(labels);
  CanonicalResult result;
  result.key = CanonicalKey{dim, std::vector<Code>(key.begin(), key.end())};
  result.stabilizer_order = canon.stabilizer_order();
  result.witness = canon.witness();
  return result;
}

CanonicalKey canonical_form(int dim, std::span<const Code> labels) {
  Canonicalizer canon(dim);
  const auto key = canon.canonicalize(labels);
  return CanonicalKey{dim, std::vector<Code>(key.begin(), key.end())};
}

CanonicalKey canonical_form(const Packing& p) { return canonical_form(p.dim(), p.codes()); }

Fingerprint invariant_fingerprint(int dim, std::span<const Code> labels) {
  check_dim(dim);
  Fingerprint fp;
  fp.dim = dim;
  fp.size = labels.size();
  fp.equal_coordinate_histogram.assign(static_cast<std::size_t>(dim) + 1, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      int equal = 0;
      for (int c = 0; c < dim; ++c) equal += digit(dim, labels[i], c) == digit(dim, labels[j], c);
      ++fp.equal_coordinate_histogram[static_cast<std::size_t>(equal)];
    }
  }
  return fp;
}

Fingerprint invariant_fingerprint(const Packing& p) { return invariant_fingerprint(p.dim(), p.codes()); }

bool are_isomorphic(const Packing& p, const Packing& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("are_isomorphic: dimension mismatch");
  if (p.size() != q.size()) return false;
  if (invariant_fingerprint(p) != invariant_fingerprint(q)) return false;
  return canonical_form(p) == canonical_form(q);
}

}  // namespace cubepack
